#include "infoprice/binary_menu.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <tuple>

#include "infoprice/error.hpp"

namespace infoprice {
namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kFeasibilityTolerance = 1e-12;

double distance_from_half(Belief v) { return std::abs(v.p0() - 0.5); }

// Snaps values that are within rounding of a menu corner onto the corner.
double snap(double I) {
    for (const double corner : {-1.0, 0.0, 1.0}) {
        if (std::abs(I - corner) <= 1e-12) {
            return corner;
        }
    }
    return std::clamp(I, -1.0, 1.0);
}

double snap_transfer(double t) { return std::abs(t) <= 1e-14 ? 0.0 : t; }

double cost_at(double I, const GameConfig& cfg) { return externality_cost(Informativeness(I), cfg); }

BinaryMenu make_menu(const BinaryScenario& s, double I_low, double I_high, double t_low, double t_high) {
    BinaryMenu menu;
    menu.I_low = Informativeness(snap(I_low));
    menu.I_high = Informativeness(snap(I_high));
    menu.t_low = snap_transfer(t_low);
    menu.t_high = snap_transfer(t_high);
    menu.expected_profit =
        menu_profit(s, menu.I_low.value(), menu.I_high.value(), menu.t_low, menu.t_high);
    return menu;
}

// Strict weak order for "better menu": higher profit, then more informative
// (smaller |I_high|, then |I_low|), then larger transfers.
bool better(const BinaryMenu& a, const BinaryMenu& b) {
    const double scale = 1.0 + std::max(std::abs(a.expected_profit), std::abs(b.expected_profit));
    if (a.expected_profit > b.expected_profit + kTieTolerance * scale) {
        return true;
    }
    if (b.expected_profit > a.expected_profit + kTieTolerance * scale) {
        return false;
    }
    const auto key = [](const BinaryMenu& m) {
        return std::make_tuple(std::abs(m.I_high.value()), std::abs(m.I_low.value()), -m.t_high, -m.t_low);
    };
    return key(a) < key(b);
}

BinaryMenu reflect_menu(const BinaryMenu& m) {
    BinaryMenu r = m;
    r.I_low = m.I_low.reflected();
    r.I_high = m.I_high.reflected();
    return r;
}

// Congruent pair with both types acting 0 on their prior (1/2 < v_h < v_l).
BinaryMenu solve_congruent_corners(const BinaryScenario& s) {
    const double vl = s.v_low().p0();
    const double vh = s.v_high().p0();
    std::optional<BinaryMenu> best;
    for (const auto& [Il, Ih] : std::array<std::pair<double, double>, 4>{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}) {
        if (Ih > Il) {
            continue;
        }
        const double tl = (1.0 - Il) * (1.0 - vl);
        const double th = (1.0 - vh) * (Il - Ih) + tl;
        if (tl < 0.0 || th < 0.0) {
            continue;
        }
        const BinaryMenu candidate = make_menu(s, Il, Ih, tl, th);
        if (max_constraint_violation(s, candidate) > kFeasibilityTolerance) {
            continue;
        }
        if (!best || better(candidate, *best)) {
            best = candidate;
        }
    }
    if (!best) {
        throw Error("no feasible corner menu; scenario invariants should make this unreachable");
    }
    return *best;
}

// Dense 4x4 solve with partial pivoting; nullopt when (near) singular.
std::optional<std::array<double, 4>> solve4(std::array<std::array<double, 5>, 4> m) {
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) {
                pivot = r;
            }
        }
        if (std::abs(m[pivot][col]) < 1e-12) {
            return std::nullopt;
        }
        std::swap(m[col], m[pivot]);
        for (int r = 0; r < 4; ++r) {
            if (r == col) {
                continue;
            }
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 5; ++c) {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    std::array<double, 4> x{};
    for (int i = 0; i < 4; ++i) {
        x[i] = m[i][4] / m[i][i];
    }
    return x;
}

}  // namespace

BinaryScenario::BinaryScenario(Belief v_low, Belief v_high, double phi, GameConfig cfg)
    : v_low_(v_low), v_high_(v_high), phi_(phi), cfg_(cfg) {
    if (!(phi >= 0.0 && phi <= 1.0)) {
        throw DomainError("phi must lie in [0, 1], got " + std::to_string(phi));
    }
    if (v_low.p0() == 0.5 || v_high.p0() == 0.5) {
        throw DomainError("buyer types must differ from 1/2");
    }
    if (!(distance_from_half(v_high) < distance_from_half(v_low))) {
        throw DomainError("the high type must be strictly less precise than the low type");
    }
}

BinaryScenario BinaryScenario::reflected() const {
    return {v_low_.reflected(), v_high_.reflected(), phi_, cfg_.with_seller_belief(cfg_.seller_belief().reflected())};
}

Congruence classify(const BinaryScenario& scenario) {
    const double vl = scenario.v_low().p0();
    const double vh = scenario.v_high().p0();
    if (vl == 0.5 || vh == 0.5) {
        throw DomainError("congruence is undefined for a type at 1/2");
    }
    return (vl > 0.5) == (vh > 0.5) ? Congruence::congruent : Congruence::noncongruent;
}

FeasibleBand admissible_band(Belief v) noexcept {
    if (strategy(v) == Action::zero) {
        return {0.0, 1.0};
    }
    return {-1.0, 0.0};
}

double noncongruent_allocation_bound(const BinaryScenario& scenario) {
    if (classify(scenario) != Congruence::noncongruent) {
        throw DomainError("allocation bound is defined for noncongruent types only");
    }
    const BinaryScenario s = scenario.mirrored() ? scenario.reflected() : scenario;
    const double vl = s.v_low().p0();
    const double vh = s.v_high().p0();
    const double bound = (2.0 * vh - 1.0) / (vh - vl) - 1.0;
    return scenario.mirrored() ? -bound : bound;
}

double menu_profit(const BinaryScenario& scenario, double I_low, double I_high, double t_low, double t_high) {
    const auto& cfg = scenario.cfg();
    const double phi = scenario.phi();
    return phi * (t_high - cost_at(I_high, cfg)) + (1.0 - phi) * (t_low - cost_at(I_low, cfg));
}

double max_constraint_violation(const BinaryScenario& scenario, const BinaryMenu& menu) {
    const Belief vl = scenario.v_low();
    const Belief vh = scenario.v_high();
    const double rent_l = gain(menu.I_low, vl) - menu.t_low;
    const double rent_h = gain(menu.I_high, vh) - menu.t_high;
    const double mimic_l = gain(menu.I_high, vl) - menu.t_high;
    const double mimic_h = gain(menu.I_low, vh) - menu.t_low;
    return std::max({-rent_l, -rent_h, mimic_l - rent_l, mimic_h - rent_h, -menu.t_low, -menu.t_high});
}

BinaryMenu solve_by_vertex_enumeration(const BinaryScenario& s) {
    const Belief vl = s.v_low();
    const Belief vh = s.v_high();
    const FeasibleBand band_l = admissible_band(vl);
    const FeasibleBand band_h = admissible_band(vh);
    const bool pos_l = band_l.hi > 0.0;
    const bool pos_h = band_h.hi > 0.0;

    // Within an admissible band the gain is affine: a(v) + slope(v, sign) I.
    const auto slope = [](Belief v, bool positive) { return v.p0() - (positive ? 1.0 : 0.0); };
    const double a_l = 1.0 - no_info_value(vl);
    const double a_h = 1.0 - no_info_value(vh);

    // Variables z = (I_low, I_high, t_low, t_high); rows are A z <= b.
    using Row = std::array<double, 5>;
    const std::array<Row, 10> rows{{
        {-1, 0, 0, 0, -band_l.lo},
        {1, 0, 0, 0, band_l.hi},
        {0, -1, 0, 0, -band_h.lo},
        {0, 1, 0, 0, band_h.hi},
        {0, 0, -1, 0, 0},
        {0, 0, 0, -1, 0},
        {-slope(vl, pos_l), 0, 1, 0, a_l},
        {0, -slope(vh, pos_h), 0, 1, a_h},
        {-slope(vl, pos_l), slope(vl, pos_h), 1, -1, 0},
        {slope(vh, pos_l), -slope(vh, pos_h), -1, 1, 0},
    }};

    std::optional<BinaryMenu> best;
    for (int a = 0; a < 10; ++a) {
        for (int b = a + 1; b < 10; ++b) {
            for (int c = b + 1; c < 10; ++c) {
                for (int d = c + 1; d < 10; ++d) {
                    const auto x = solve4({rows[a], rows[b], rows[c], rows[d]});
                    if (!x) {
                        continue;
                    }
                    bool feasible = true;
                    for (const Row& r : rows) {
                        const double lhs = r[0] * (*x)[0] + r[1] * (*x)[1] + r[2] * (*x)[2] + r[3] * (*x)[3];
                        if (lhs > r[4] + kFeasibilityTolerance) {
                            feasible = false;
                            break;
                        }
                    }
                    if (!feasible) {
                        continue;
                    }
                    const BinaryMenu candidate = make_menu(s, (*x)[0], (*x)[1], (*x)[2], (*x)[3]);
                    if (!best || better(candidate, *best)) {
                        best = candidate;
                    }
                }
            }
        }
    }
    if (!best) {
        throw Error("allocation/transfer polytope has no vertex; scenario invariants should make this unreachable");
    }
    return *best;
}

BinaryMenu solve(const BinaryScenario& scenario) {
    if (classify(scenario) == Congruence::noncongruent) {
        return solve_by_vertex_enumeration(scenario);
    }
    if (scenario.mirrored()) {
        BinaryMenu m = reflect_menu(solve_congruent_corners(scenario.reflected()));
        m.expected_profit = menu_profit(scenario, m.I_low.value(), m.I_high.value(), m.t_low, m.t_high);
        return m;
    }
    return solve_congruent_corners(scenario);
}

Boundaries boundaries(const BinaryScenario& scenario) {
    const BinaryScenario s = scenario.mirrored() ? scenario.reflected() : scenario;
    const double vl = s.v_low().p0();
    const double vh = s.v_high().p0();
    const double phi = s.phi();
    const double v_s = s.cfg().v_s();
    constexpr double inf = std::numeric_limits<double>::infinity();
    const auto ratio = [](double num, double den) { return den == 0.0 ? inf : num / den; };

    if (classify(s) == Congruence::congruent) {
        const double den = (v_s - 1.0) * (2.0 * v_s - 1.0);
        return {ratio((1.0 - vl) - phi * (1.0 - vh), (1.0 - phi) * den), ratio(1.0 - vh, den)};
    }
    return {ratio(vl, v_s * (2.0 * v_s - 1.0)), ratio(1.0 - vh, (1.0 - v_s) * (1.0 - 2.0 * v_s))};
}

std::string regime_label(const BinaryMenu& menu) {
    const auto label = [](Informativeness I) -> std::string {
        const double a = std::abs(I.value());
        if (a <= 1e-12) {
            return "full";
        }
        if (a >= 1.0 - 1e-12) {
            return "none";
        }
        return "partial";
    };
    return label(menu.I_low) + "-" + label(menu.I_high);
}

std::vector<BoundaryGridRow> boundary_grid(const BinaryScenario& scenario_template, std::span<const double> v_s_grid,
                                           std::span<const double> tau_grid) {
    if (v_s_grid.empty() || tau_grid.empty()) {
        throw DomainError("boundary grid axes must be nonempty");
    }
    std::vector<BoundaryGridRow> rows;
    rows.reserve(v_s_grid.size() * tau_grid.size());
    for (const double v_s : v_s_grid) {
        for (const double tau : tau_grid) {
            const BinaryScenario cell = scenario_template.with_cfg(GameConfig(tau, Belief(v_s)));
            BinaryMenu menu = solve(cell);
            std::string regime = regime_label(menu);
            rows.push_back({v_s, tau, cell.phi(), menu, std::move(regime)});
        }
    }
    return rows;
}

}  // namespace infoprice
