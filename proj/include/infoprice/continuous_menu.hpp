#pragma once

#include <optional>

#include "infoprice/distribution.hpp"
#include "infoprice/game.hpp"
#include "infoprice/rules.hpp"

namespace infoprice {

/// Marginal profit of raising a type's allocation across [-1, 0] (minus)
/// and across [0, 1] (plus), per unit of Lebesgue measure:
///
///   pi-(v) = p(v) (tau v_s (1 - 2 v_s) + v)     + F(v)
///   pi+(v) = p(v) (tau (1 - v_s)(1 - 2 v_s) + v - 1) + F(v)
class VirtualValues {
public:
    VirtualValues(TypeDistribution dist, GameConfig cfg);

    [[nodiscard]] double pi_minus(double v) const;
    [[nodiscard]] double pi_plus(double v) const;

    /// Pointwise virtual surplus I * pi(I, v), piecewise linear in I.
    [[nodiscard]] double surplus(double I, double v) const;

    [[nodiscard]] const TypeDistribution& distribution() const noexcept { return dist_; }
    [[nodiscard]] const GameConfig& cfg() const noexcept { return cfg_; }

private:
    TypeDistribution dist_;
    GameConfig cfg_;
    double shift_minus_;
    double shift_plus_;
};

[[nodiscard]] VirtualValues virtual_values(const TypeDistribution& dist, const GameConfig& cfg);

/// First grid point at which pi- or pi+ decreases by more than 1e-9, if any.
[[nodiscard]] std::optional<double> first_irregular_type(const TypeDistribution& dist, const GameConfig& cfg,
                                                         int grid_n);

/// True iff both virtual values are nondecreasing on a grid_n-point grid.
/// Throws DomainError if grid_n < 2.
[[nodiscard]] bool regularity_check(const TypeDistribution& dist, const GameConfig& cfg, int grid_n);

/// Competition level (1 - 2 v_s)^-2 at which the virtual values coincide;
/// +infinity at v_s = 1/2.
[[nodiscard]] double tau_prime(const GameConfig& cfg);

enum class MenuRegime { screening, no_information };

/// Step allocation: I = -1 below v_lo, 0 on [v_lo, v_hi], +1 above v_hi.
/// The no-information menu has v_lo = v_hi = 1/2 with the single threshold
/// type receiving -1.
struct StepMenu {
    double v_lo = 0.5;
    double v_hi = 0.5;
    double lambda_star = 0.0;
    MenuRegime regime = MenuRegime::no_information;
};

struct DualOptions {
    /// Use lambda* = (pi-(1/2) + pi+(1/2)) / 2 for the uniform distribution.
    bool closed_form_fast_path = true;
    double tolerance = 1e-10;
    int max_iterations = 200;
    int regularity_grid = 1001;
};

/// Optimal step menu via the dual variable of the measure-balance
/// constraint. Throws IrregularDistributionError for irregular inputs and
/// BracketError if the bisection cannot bracket or converge.
[[nodiscard]] StepMenu solve_dual(const TypeDistribution& dist, const GameConfig& cfg, const DualOptions& opts = {});

[[nodiscard]] Informativeness allocation(const StepMenu& menu, Belief v_b);

/// Integral of the allocation over [0, v].
[[nodiscard]] double allocation_integral(const StepMenu& menu, double v);

/// t(v) = I(v) (v - 1{I(v) >= 0}) - int_0^v I(z) dz.
[[nodiscard]] double transfer(const StepMenu& menu, Belief v_b);

/// Information rent gain(I(v), v) - t(v) of a truthful report.
[[nodiscard]] double rent(const StepMenu& menu, Belief v_b);

/// Expected profit from the virtual-surplus integrand, by quadrature over
/// the constant-allocation segments.
[[nodiscard]] double expected_profit(const StepMenu& menu, const TypeDistribution& dist, const GameConfig& cfg);

/// Expected profit E[t(v) - c(I(v))] from the transfer schedule and the
/// externality cost directly.
[[nodiscard]] double expected_profit_direct(const StepMenu& menu, const TypeDistribution& dist,
                                            const GameConfig& cfg);

struct ProfitBaselines {
    double versioning;
    double full_info;
    double no_info;
};

/// Optimal screening profit, free full revelation to every type, and no
/// sharing at all.
[[nodiscard]] ProfitBaselines profit_baselines(const TypeDistribution& dist, const GameConfig& cfg);

}  // namespace infoprice
