#include "infoprice/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <thread>

#include <json.hpp>

#include "infoprice/error.hpp"
#include "infoprice/quadrature.hpp"

namespace infoprice {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based generator: the draw depends only on (seed, stream, counter).
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix64(seed ^ mix64(stream * kGolden + 1))) {}

    double uniform(std::uint64_t counter) const {
        return static_cast<double>(mix64(key_ + (counter + 1) * kGolden) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t key_;
};

struct Tally {
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
    std::int64_t coupled = 0;
};

// Runs sample(rng, index, tally) for every index, split over a fixed number
// of streams so that the integer totals are independent of thread count.
template <typename Sample>
Tally run_streams(const McConfig& mc, const Sample& sample) {
    if (mc.samples == 0) {
        throw DomainError("Monte-Carlo run needs at least one sample");
    }
    std::array<Tally, kMcStreams> tallies{};
    const auto run_stream = [&](unsigned s) {
        const CounterRng rng(mc.seed, s);
        const std::uint64_t begin = mc.samples * s / kMcStreams;
        const std::uint64_t end = mc.samples * (s + 1) / kMcStreams;
        Tally t;
        for (std::uint64_t i = begin; i < end; ++i) {
            sample(rng, i, t);
        }
        tallies[s] = t;
    };
    const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    const unsigned workers = std::min(hw, kMcStreams);
    if (workers == 1) {
        for (unsigned s = 0; s < kMcStreams; ++s) {
            run_stream(s);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (unsigned s = w; s < kMcStreams; s += workers) {
                    run_stream(s);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    Tally total;
    for (const Tally& t : tallies) {
        total.sum += t.sum;
        total.sum_sq += t.sum_sq;
        total.coupled += t.coupled;
    }
    return total;
}

double std_error_of(const Tally& t, std::uint64_t n) {
    const double mean = static_cast<double>(t.sum) / static_cast<double>(n);
    const double var = std::max(0.0, static_cast<double>(t.sum_sq) / static_cast<double>(n) - mean * mean);
    return std::sqrt(var / static_cast<double>(n));
}

// Action the buyer takes after message m, or nullopt if m cannot occur.
std::optional<Action> response(const DirectRule& rule, Belief v_b, Message m) {
    try {
        return strategy(message_posterior(rule, v_b, m));
    } catch (const ZeroEvidenceError&) {
        return std::nullopt;
    }
}

std::string fmt_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

constexpr double kEnvelopeTolerance = 1e-5;

}  // namespace

OracleReport make_report(std::string label, double closed_form, double estimate, double std_error,
                         double tolerance) {
    OracleReport r;
    r.label = std::move(label);
    r.closed_form = closed_form;
    r.estimate = estimate;
    r.std_error = std_error;
    r.tolerance = tolerance;
    r.pass = std::abs(closed_form - estimate) <= std::max(3.0 * std_error, tolerance);
    return r;
}

OracleReport mc_gain(Informativeness I, Belief v_b, const McConfig& mc) {
    const DirectRule rule = concentrate(I);
    const std::array<std::optional<Action>, 2> act{response(rule, v_b, Message::m0),
                                                    response(rule, v_b, Message::m1)};
    const Action prior_act = strategy(v_b);
    const double v = v_b.p0();

    const Tally t = run_streams(mc, [&](const CounterRng& rng, std::uint64_t i, Tally& out) {
        const State x = rng.uniform(2 * i) < v ? State::zero : State::one;
        const double p_m0 = rule.likelihood(Message::m0, x);
        const Message m = rng.uniform(2 * i + 1) < p_m0 ? Message::m0 : Message::m1;
        const Action a = act[static_cast<int>(m)].value_or(prior_act);
        const int d = static_cast<int>(to_int(a) == static_cast<int>(x)) -
                      static_cast<int>(to_int(prior_act) == static_cast<int>(x));
        out.sum += d;
        out.sum_sq += d * d;
    });
    const double n = static_cast<double>(mc.samples);
    return make_report("mc_gain(I=" + fmt_num(I.value()) + ",v_b=" + fmt_num(v) + ")", gain(I, v_b),
                       static_cast<double>(t.sum) / n, std_error_of(t, mc.samples), 1e-12);
}

OracleReport mc_cost(Informativeness I, const GameConfig& cfg, const McConfig& mc) {
    const DirectRule rule = concentrate(I);
    const double v_s = cfg.v_s();
    const double p_m0 = message_marginal(rule, cfg.seller_belief()).m0;

    const Tally t = run_streams(mc, [&](const CounterRng& rng, std::uint64_t i, Tally& out) {
        const int m = rng.uniform(3 * i) < p_m0 ? 0 : 1;
        const int x = rng.uniform(3 * i + 1) < v_s ? 0 : 1;
        const int hit = m == x ? 1 : 0;
        out.sum += hit;
        out.sum_sq += hit;
        // Coupled draw: the message depends on the same state.
        const double p_m0_given_x = rule.likelihood(Message::m0, x == 0 ? State::zero : State::one);
        const int m_coupled = rng.uniform(3 * i + 2) < p_m0_given_x ? 0 : 1;
        out.coupled += m_coupled == x ? 1 : 0;
    });
    const double n = static_cast<double>(mc.samples);
    const double tau = cfg.tau();
    OracleReport r = make_report("mc_cost(I=" + fmt_num(I.value()) + ",tau=" + fmt_num(tau) +
                                     ",v_s=" + fmt_num(v_s) + ")",
                                 externality_cost(I, cfg), tau * static_cast<double>(t.sum) / n,
                                 tau * std_error_of(t, mc.samples), 1e-12);
    r.coupled_estimate = tau * static_cast<double>(t.coupled) / n;
    r.coupled_closed_form = tau * (v_s * rule.i0() + (1.0 - v_s) * rule.i1());
    return r;
}

double enumerated_gain(const DirectRule& rule, Belief v_b) {
    double informed = 0.0;
    for (const Message m : {Message::m0, Message::m1}) {
        informed += std::max(v_b.p0() * rule.likelihood(m, State::zero), v_b.p1() * rule.likelihood(m, State::one));
    }
    return informed - std::max(v_b.p0(), v_b.p1());
}

BinaryMenu brute_force_binary(const BinaryScenario& scenario, int grid_n) {
    if (grid_n < 2) {
        throw DomainError("brute-force grid needs at least two points per axis");
    }
    const Belief vl = scenario.v_low();
    const Belief vh = scenario.v_high();
    const double phi = scenario.phi();
    const FeasibleBand band_l = admissible_band(vl);
    const FeasibleBand band_h = admissible_band(vh);
    const auto g = [](double I, Belief v) { return gain(Informativeness(I), v); };
    const auto point = [grid_n](const FeasibleBand& b, int k) {
        return k == grid_n - 1 ? b.hi : b.lo + (b.hi - b.lo) * k / (grid_n - 1);
    };

    std::optional<BinaryMenu> best;
    for (int a = 0; a < grid_n; ++a) {
        const double Il = point(band_l, a);
        for (int b = 0; b < grid_n; ++b) {
            const double Ih = point(band_h, b);
            // Constraints on (t_l, t_h) as c0 t_l + c1 t_h <= rhs.
            const std::array<std::array<double, 3>, 6> cons{{
                {1, 0, g(Il, vl)},
                {0, 1, g(Ih, vh)},
                {1, -1, g(Il, vl) - g(Ih, vl)},
                {-1, 1, g(Ih, vh) - g(Il, vh)},
                {-1, 0, 0},
                {0, -1, 0},
            }};
            std::optional<std::pair<double, double>> best_t;
            double best_obj = -std::numeric_limits<double>::infinity();
            for (int p = 0; p < 6; ++p) {
                for (int q = p + 1; q < 6; ++q) {
                    const double det = cons[p][0] * cons[q][1] - cons[p][1] * cons[q][0];
                    if (det == 0.0) {
                        continue;
                    }
                    const double tl = (cons[p][2] * cons[q][1] - cons[p][1] * cons[q][2]) / det;
                    const double th = (cons[p][0] * cons[q][2] - cons[p][2] * cons[q][0]) / det;
                    const bool feasible = std::all_of(cons.begin(), cons.end(), [&](const auto& c) {
                        return c[0] * tl + c[1] * th <= c[2] + 1e-12;
                    });
                    const double obj = phi * th + (1.0 - phi) * tl;
                    if (feasible && obj > best_obj) {
                        best_obj = obj;
                        best_t = {tl, th};
                    }
                }
            }
            if (!best_t) {
                continue;
            }
            BinaryMenu m;
            m.I_low = Informativeness(Il);
            m.I_high = Informativeness(Ih);
            m.t_low = best_t->first;
            m.t_high = best_t->second;
            m.expected_profit = menu_profit(scenario, Il, Ih, m.t_low, m.t_high);
            if (!best || m.expected_profit > best->expected_profit + 1e-12) {
                best = m;
            }
        }
    }
    if (!best) {
        throw Error("brute-force search found no feasible menu");
    }
    return *best;
}

double brute_force_continuous(const TypeDistribution& dist, const GameConfig& cfg, int threshold_grid_n,
                              int levels) {
    if (levels < 3 || levels % 2 == 0) {
        throw DomainError("levels must be odd and at least 3");
    }
    if (threshold_grid_n < 2) {
        throw DomainError("threshold grid needs at least two points");
    }
    const VirtualValues pi(dist, cfg);
    const int cells = threshold_grid_n - 1;
    // Prefix integrals of both virtual values over the cells.
    std::vector<double> cum_minus(cells + 1, 0.0);
    std::vector<double> cum_plus(cells + 1, 0.0);
    for (int i = 0; i < cells; ++i) {
        const double a = static_cast<double>(i) / cells;
        const double b = static_cast<double>(i + 1) / cells;
        cum_minus[i + 1] = cum_minus[i] + integrate([&](double v) { return pi.pi_minus(v); }, a, b);
        cum_plus[i + 1] = cum_plus[i] + integrate([&](double v) { return pi.pi_plus(v); }, a, b);
    }
    const int k = levels;
    const auto level = [k](int j) { return -1.0 + 2.0 * j / (k - 1); };
    const auto weight = [k](int j) { return 2 * j - (k - 1); };
    const auto segment = [&](int j, int from, int to) {
        const double L = level(j);
        if (L < 0.0) {
            return L * (cum_minus[to] - cum_minus[from]);
        }
        if (L > 0.0) {
            return L * (cum_plus[to] - cum_plus[from]);
        }
        return 0.0;
    };

    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> counts(k, 0);
    // counts[0..k-3] are free; the last two are pinned by the cell total
    // and the zero-mean constraint.
    const auto recurse = [&](const auto& self, int j, int used, int moment, double value) -> void {
        if (j == k - 2) {
            const int remaining = cells - used;
            const int twice_top = -moment - (k - 3) * remaining;
            if (twice_top < 0 || twice_top % 2 != 0 || twice_top / 2 > remaining) {
                return;
            }
            const int top = twice_top / 2;
            const int mid = remaining - top;
            const double total = value + segment(k - 2, used, used + mid) + segment(k - 1, used + mid, cells);
            best = std::max(best, total);
            return;
        }
        for (int n = 0; used + n <= cells; ++n) {
            self(self, j + 1, used + n, moment + weight(j) * n, value + segment(j, used, used + n));
        }
    };
    recurse(recurse, 0, 0, 0, 0.0);
    return best - externality_cost(Informativeness(0.0), cfg);
}

MenuSchedule schedule_of(const StepMenu& menu) {
    MenuSchedule s;
    s.allocation = [menu](double v) { return allocation(menu, Belief(v)).value(); };
    s.transfer = [menu](double v) { return transfer(menu, Belief(v)); };
    s.kinks = {menu.v_lo, menu.v_hi, 0.5};
    return s;
}

OracleReport envelope_check(const MenuSchedule& schedule, double step) {
    if (!(step > 0.0)) {
        throw DomainError("envelope step must be positive");
    }
    const auto rent_at = [&](double v) {
        const double x = std::clamp(v, 0.0, 1.0);
        return gain(Informativeness(schedule.allocation(x)), Belief(x)) - schedule.transfer(x);
    };
    const auto near_kink = [&](double v) {
        return std::any_of(schedule.kinks.begin(), schedule.kinks.end(),
                           [&](double kink) { return std::abs(v - kink) <= 2.0 * step; });
    };

    double worst = std::max(std::abs(rent_at(0.0)), std::abs(rent_at(1.0)));
    constexpr int kGrid = 2000;
    for (int i = 1; i < kGrid; ++i) {
        const double v = static_cast<double>(i) / kGrid;
        if (v - step < 0.0 || v + step > 1.0 || near_kink(v)) {
            continue;
        }
        const double slope = (rent_at(v + step) - rent_at(v - step)) / (2.0 * step);
        const double expected = schedule.allocation(v) + (v < 0.5 ? 1.0 : -1.0);
        worst = std::max(worst, std::abs(slope - expected));
    }
    // |rent'| <= 2, so a continuous rent moves at most 4 step across a kink.
    for (const double kink : schedule.kinks) {
        if (kink - step < 0.0 || kink + step > 1.0) {
            continue;
        }
        const double jump = std::abs(rent_at(kink + step) - rent_at(kink - step));
        worst = std::max(worst, jump - 4.0 * step);
    }
    OracleReport r = make_report("envelope_check(step=" + fmt_num(step) + ")", 0.0, worst, 0.0, kEnvelopeTolerance);
    r.pass = worst < kEnvelopeTolerance;
    return r;
}

OracleReport envelope_check(const StepMenu& menu, double step) { return envelope_check(schedule_of(menu), step); }

std::string to_json_line(const OracleReport& report) {
    nlohmann::ordered_json j;
    j["label"] = report.label;
    j["closed_form"] = report.closed_form;
    j["estimate"] = report.estimate;
    j["std_error"] = report.std_error;
    j["tolerance"] = report.tolerance;
    j["pass"] = report.pass;
    if (report.coupled_estimate) {
        j["coupled_estimate"] = *report.coupled_estimate;
        j["coupled_closed_form"] = *report.coupled_closed_form;
        j["coupled_informational"] = true;
    }
    return j.dump();
}

}  // namespace infoprice
