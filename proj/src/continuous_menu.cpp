#include "infoprice/continuous_menu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "infoprice/error.hpp"
#include "infoprice/quadrature.hpp"

namespace infoprice {
namespace {

constexpr double kRegularitySlack = 1e-9;

// Largest v in [0, 1] with pi(v) < level, for nondecreasing pi.
template <typename Pi>
double threshold_for(const Pi& pi, double level) {
    if (pi(0.0) >= level) {
        return 0.0;
    }
    if (pi(1.0) <= level) {
        return 1.0;
    }
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (pi(mid) < level) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

StepMenu balanced_menu(double v_lo, double v_hi, double lambda) {
    // Split the residual imbalance evenly. hi lies in [1/2, 1], so 1 - hi is
    // exact and the two outer segments have identical floating-point length.
    const double hi = 1.0 - std::clamp(0.5 * (v_lo + (1.0 - v_hi)), 0.0, 0.5);
    return {1.0 - hi, hi, lambda, MenuRegime::screening};
}

}  // namespace

VirtualValues::VirtualValues(TypeDistribution dist, GameConfig cfg)
    : dist_(std::move(dist)),
      cfg_(cfg),
      shift_minus_(cfg.tau() * cfg.v_s() * (1.0 - 2.0 * cfg.v_s())),
      shift_plus_(cfg.tau() * (1.0 - cfg.v_s()) * (1.0 - 2.0 * cfg.v_s()) - 1.0) {}

double VirtualValues::pi_minus(double v) const { return dist_.density(v) * (shift_minus_ + v) + dist_.cdf(v); }

double VirtualValues::pi_plus(double v) const { return dist_.density(v) * (shift_plus_ + v) + dist_.cdf(v); }

double VirtualValues::surplus(double I, double v) const { return I * (I < 0.0 ? pi_minus(v) : pi_plus(v)); }

VirtualValues virtual_values(const TypeDistribution& dist, const GameConfig& cfg) { return {dist, cfg}; }

std::optional<double> first_irregular_type(const TypeDistribution& dist, const GameConfig& cfg, int grid_n) {
    if (grid_n < 2) {
        throw DomainError("regularity grid needs at least two points");
    }
    const VirtualValues pi(dist, cfg);
    double prev_minus = pi.pi_minus(0.0);
    double prev_plus = pi.pi_plus(0.0);
    for (int k = 1; k < grid_n; ++k) {
        const double v = static_cast<double>(k) / (grid_n - 1);
        const double minus = pi.pi_minus(v);
        const double plus = pi.pi_plus(v);
        if (minus - prev_minus < -kRegularitySlack || plus - prev_plus < -kRegularitySlack) {
            return v;
        }
        prev_minus = minus;
        prev_plus = plus;
    }
    return std::nullopt;
}

bool regularity_check(const TypeDistribution& dist, const GameConfig& cfg, int grid_n) {
    return !first_irregular_type(dist, cfg, grid_n).has_value();
}

double tau_prime(const GameConfig& cfg) {
    const double gap = 1.0 - 2.0 * cfg.v_s();
    if (gap == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 / (gap * gap);
}

StepMenu solve_dual(const TypeDistribution& dist, const GameConfig& cfg, const DualOptions& opts) {
    if (const auto bad = first_irregular_type(dist, cfg, opts.regularity_grid)) {
        throw IrregularDistributionError(
            dist.name() + " is irregular: virtual values decrease at v_b=" + std::to_string(*bad), *bad);
    }
    const VirtualValues pi(dist, cfg);
    const auto pi_minus = [&](double v) { return pi.pi_minus(v); };
    const auto pi_plus = [&](double v) { return pi.pi_plus(v); };

    if (cfg.tau() >= tau_prime(cfg)) {
        return {0.5, 0.5, pi.pi_plus(0.5), MenuRegime::no_information};
    }

    if (opts.closed_form_fast_path && dist.is_uniform()) {
        const double lambda = 0.5 * (pi.pi_minus(0.5) + pi.pi_plus(0.5));
        return balanced_menu(threshold_for(pi_minus, lambda), threshold_for(pi_plus, lambda), lambda);
    }

    const auto imbalance = [&](double lambda) {
        return threshold_for(pi_minus, lambda) + threshold_for(pi_plus, lambda) - 1.0;
    };
    double lo = std::min(pi.pi_minus(0.0), pi.pi_plus(0.0)) - 1.0;
    double hi = std::max(pi.pi_minus(1.0), pi.pi_plus(1.0)) + 1.0;
    if (imbalance(lo) > 0.0 || imbalance(hi) < 0.0) {
        throw BracketError("dual bisection bracket does not straddle the measure-balance root");
    }
    for (int i = 0; i < opts.max_iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double g = imbalance(mid);
        if (std::abs(g) <= opts.tolerance) {
            return balanced_menu(threshold_for(pi_minus, mid), threshold_for(pi_plus, mid), mid);
        }
        (g < 0.0 ? lo : hi) = mid;
    }
    throw BracketError("dual bisection did not reach |g| <= " + std::to_string(opts.tolerance) + " in " +
                       std::to_string(opts.max_iterations) + " iterations");
}

Informativeness allocation(const StepMenu& menu, Belief v_b) {
    const double v = v_b.p0();
    if (menu.regime == MenuRegime::no_information) {
        return Informativeness(v <= menu.v_lo ? -1.0 : 1.0);
    }
    if (v < menu.v_lo) {
        return Informativeness(-1.0);
    }
    if (v > menu.v_hi) {
        return Informativeness(1.0);
    }
    return Informativeness(0.0);
}

double allocation_integral(const StepMenu& menu, double v) {
    const double x = std::clamp(v, 0.0, 1.0);
    return -std::min(x, menu.v_lo) + std::max(0.0, x - menu.v_hi);
}

double transfer(const StepMenu& menu, Belief v_b) {
    const double I = allocation(menu, v_b).value();
    const double revealed = I >= 0.0 ? 1.0 : 0.0;
    return I * (v_b.p0() - revealed) - allocation_integral(menu, v_b.p0());
}

double rent(const StepMenu& menu, Belief v_b) { return gain(allocation(menu, v_b), v_b) - transfer(menu, v_b); }

double expected_profit(const StepMenu& menu, const TypeDistribution& dist, const GameConfig& cfg) {
    const VirtualValues pi(dist, cfg);
    // The integrand omits the allocation-independent cost c(0), added back here.
    const double lower = integrate([&](double v) { return -pi.pi_minus(v); }, 0.0, menu.v_lo);
    const double upper = integrate([&](double v) { return pi.pi_plus(v); }, menu.v_hi, 1.0);
    return lower + upper - externality_cost(Informativeness(0.0), cfg);
}

double expected_profit_direct(const StepMenu& menu, const TypeDistribution& dist, const GameConfig& cfg) {
    const auto integrand = [&](double v) {
        const Belief b(std::clamp(v, 0.0, 1.0));
        return (transfer(menu, b) - externality_cost(allocation(menu, b), cfg)) * dist.density(v);
    };
    double total = integrate(integrand, 0.0, menu.v_lo) + integrate(integrand, menu.v_hi, 1.0);
    if (menu.v_hi > menu.v_lo) {
        total += integrate(integrand, menu.v_lo, menu.v_hi);
    }
    return total;
}

ProfitBaselines profit_baselines(const TypeDistribution& dist, const GameConfig& cfg) {
    const StepMenu menu = solve_dual(dist, cfg);
    const double v_s = cfg.v_s();
    const double below_half = dist.cdf(0.5);
    return {
        expected_profit(menu, dist, cfg),
        -externality_cost(Informativeness(0.0), cfg),
        -cfg.tau() * (v_s * (1.0 - below_half) + (1.0 - v_s) * below_half),
    };
}

}  // namespace infoprice
