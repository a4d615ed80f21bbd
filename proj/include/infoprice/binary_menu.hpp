#pragma once

#include <span>
#include <string>
#include <vector>

#include "infoprice/game.hpp"
#include "infoprice/rules.hpp"

namespace infoprice {

/// A two-type market. The high type is the less precise one (closer to 1/2)
/// and therefore values full information more; phi = P(high type).
class BinaryScenario {
public:
    /// Throws DomainError when phi is outside [0, 1], when the high type is
    /// not strictly less precise than the low type, or when either type sits
    /// exactly at 1/2.
    BinaryScenario(Belief v_low, Belief v_high, double phi, GameConfig cfg);

    [[nodiscard]] Belief v_low() const noexcept { return v_low_; }
    [[nodiscard]] Belief v_high() const noexcept { return v_high_; }
    [[nodiscard]] double phi() const noexcept { return phi_; }
    [[nodiscard]] const GameConfig& cfg() const noexcept { return cfg_; }

    [[nodiscard]] BinaryScenario with_cfg(GameConfig cfg) const { return {v_low_, v_high_, phi_, cfg}; }

    /// True when v_high < 1/2, i.e. the scenario is the mirror image of the
    /// normalized case with state labels swapped.
    [[nodiscard]] bool mirrored() const noexcept { return v_high_.p0() < 0.5; }

    /// Swaps state labels: every belief v maps to 1 - v.
    [[nodiscard]] BinaryScenario reflected() const;

private:
    Belief v_low_;
    Belief v_high_;
    double phi_;
    GameConfig cfg_;
};

enum class Congruence { congruent, noncongruent };

struct BinaryMenu {
    Informativeness I_low{0.0};
    Informativeness I_high{0.0};
    double t_low = 0.0;
    double t_high = 0.0;
    double expected_profit = 0.0;
};

/// Competition thresholds; +infinity where the closed form's denominator vanishes.
struct Boundaries {
    double tau_low;
    double tau_high;
};

struct BoundaryGridRow {
    double v_s;
    double tau;
    double phi;
    BinaryMenu menu;
    std::string regime;
};

[[nodiscard]] Congruence classify(const BinaryScenario& scenario);

/// Allocation range a type may be offered: [0, 1] for types acting 0 on
/// their prior and [-1, 0] for types acting 1, so the certain message is
/// always the one that can change the type's action.
[[nodiscard]] FeasibleBand admissible_band(Belief v) noexcept;

/// Largest low-type allocation compatible with both participation
/// constraints binding and the high type not mimicking, for noncongruent
/// types: (2 v_h - 1) / (v_h - v_l) - 1.
[[nodiscard]] double noncongruent_allocation_bound(const BinaryScenario& scenario);

/// Expected profit phi (t_h - c_h) + (1 - phi)(t_l - c_l) of an arbitrary menu.
[[nodiscard]] double menu_profit(const BinaryScenario& scenario, double I_low, double I_high, double t_low,
                                 double t_high);

/// Worst violation of the four participation / incentive constraints; <= 0
/// when the menu is feasible.
[[nodiscard]] double max_constraint_violation(const BinaryScenario& scenario, const BinaryMenu& menu);

/// Profit-maximizing menu. Congruent pairs enumerate the four allocation
/// corners with participation (low) and incentive (high) binding;
/// noncongruent pairs are solved exactly by enumerating the vertices of the
/// joint allocation/transfer polytope. Ties go to the more informative menu.
[[nodiscard]] BinaryMenu solve(const BinaryScenario& scenario);

/// Vertex enumeration of the full four-variable linear program, for either
/// congruence class. solve() uses it for noncongruent pairs.
[[nodiscard]] BinaryMenu solve_by_vertex_enumeration(const BinaryScenario& scenario);

[[nodiscard]] Boundaries boundaries(const BinaryScenario& scenario);

/// "full" for I = 0, "none" for |I| = 1, "partial" otherwise; joined low-high.
[[nodiscard]] std::string regime_label(const BinaryMenu& menu);

/// Solves every (v_s, tau) cell of the grid, v_s-major.
[[nodiscard]] std::vector<BoundaryGridRow> boundary_grid(const BinaryScenario& scenario_template,
                                                         std::span<const double> v_s_grid,
                                                         std::span<const double> tau_grid);

}  // namespace infoprice
