#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "infoprice/binary_menu.hpp"
#include "infoprice/continuous_menu.hpp"
#include "infoprice/distribution.hpp"
#include "infoprice/game.hpp"
#include "infoprice/rules.hpp"

namespace infoprice {

struct McConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
};

/// One independent check of a closed-form quantity. `std_error` holds the
/// Monte-Carlo standard error, or the grid gap for deterministic searches.
struct OracleReport {
    std::string label;
    double closed_form = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    /// Informational only: physically coupled cost and its closed form.
    std::optional<double> coupled_estimate;
    std::optional<double> coupled_closed_form;
};

/// pass = |closed_form - estimate| <= max(3 std_error, tolerance).
[[nodiscard]] OracleReport make_report(std::string label, double closed_form, double estimate, double std_error,
                                       double tolerance);

/// Number of RNG streams a Monte-Carlo run is split into. Fixed so results
/// do not depend on the number of worker threads.
inline constexpr unsigned kMcStreams = 16;

/// Simulates state, message, and the buyer's best response, and compares
/// the average improvement over acting on the prior to gain(I, v_b).
/// Throws DomainError if mc.samples == 0.
[[nodiscard]] OracleReport mc_gain(Informativeness I, Belief v_b, const McConfig& mc);

/// Draws the message from its marginal under the seller's belief and the
/// state independently, and compares tau P(recommended action = state) with
/// externality_cost. The coupled draw (message conditioned on the state) is
/// attached as informational fields.
[[nodiscard]] OracleReport mc_cost(Informativeness I, const GameConfig& cfg, const McConfig& mc);

/// Sum over messages of the best posterior-weighted payoff, minus the
/// no-information value.
[[nodiscard]] double enumerated_gain(const DirectRule& rule, Belief v_b);

/// Grid search over (I_low, I_high) in the admissible bands, with transfers
/// maximized exactly for each pair. Throws DomainError if grid_n < 2.
[[nodiscard]] BinaryMenu brute_force_binary(const BinaryScenario& scenario, int grid_n);

/// Best profit over monotone step menus taking `levels` equally spaced
/// values in [-1, 1], with thresholds on a threshold_grid_n-point grid and
/// zero mean allocation. Throws DomainError unless levels is odd and >= 3
/// and threshold_grid_n >= 2.
[[nodiscard]] double brute_force_continuous(const TypeDistribution& dist, const GameConfig& cfg,
                                            int threshold_grid_n, int levels);

/// Schedules a menu is checked through: allocation and transfer per type,
/// plus the points where either may jump.
struct MenuSchedule {
    std::function<double(double)> allocation;
    std::function<double(double)> transfer;
    std::vector<double> kinks;
};

[[nodiscard]] MenuSchedule schedule_of(const StepMenu& menu);

/// Largest of: finite-difference slope error of the rent against I(v) +- 1
/// away from the kinks, any rent jump across a kink beyond what slope 2
/// allows, and |rent| at v = 0 and v = 1. Passes below 1e-5.
/// Throws DomainError unless step > 0.
[[nodiscard]] OracleReport envelope_check(const MenuSchedule& schedule, double step);
[[nodiscard]] OracleReport envelope_check(const StepMenu& menu, double step);

[[nodiscard]] std::string to_json_line(const OracleReport& report);

}  // namespace infoprice
