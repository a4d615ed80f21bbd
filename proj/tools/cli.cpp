#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "infoprice/binary_menu.hpp"
#include "infoprice/continuous_menu.hpp"
#include "infoprice/distribution.hpp"
#include "infoprice/error.hpp"
#include "infoprice/oracle.hpp"

namespace infoprice::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x) {
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
    return buf;
}

class Csv {
public:
    Csv(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) {
            throw ConfigError("cannot open " + path.string() + " for writing");
        }
        write(header);
    }

    void row(const std::vector<double>& values) {
        std::vector<std::string> cells;
        cells.reserve(values.size());
        for (const double v : values) {
            cells.push_back(num(v));
        }
        write(cells);
    }

    void write(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out_ << (i ? "," : "") << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

std::vector<double> linspace(double from, double to, int n) {
    if (n < 1) {
        throw ConfigError("grids need at least one point");
    }
    if (n == 1) {
        return {from};
    }
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = i == n - 1 ? to : from + (to - from) * i / (n - 1);
    }
    return xs;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t");
    const auto last = s.find_last_not_of(" \t");
    return first == std::string::npos ? "" : s.substr(first, last - first + 1);
}

double parse_plain(const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + text + "'");
    }
    if (used != t.size()) {
        throw ConfigError("not a number: '" + text + "'");
    }
    return value;
}

struct Sweep {
    std::string axis;
    std::vector<double> values;
};

struct BinaryBuyer {
    double v_low;
    double v_high;
    std::vector<double> phis;
};

struct ContinuousBuyer {
    std::string distribution;
    json params;
};

struct VirtualSurplusSpec {
    double v_b;
    std::vector<double> v_s;
};

struct Scenario {
    std::vector<double> taus;
    double v_s = 0.5;
    std::optional<BinaryBuyer> binary;
    std::optional<ContinuousBuyer> continuous;
    std::vector<Sweep> sweeps;
    McConfig mc;
    std::optional<VirtualSurplusSpec> virtual_surplus;
    double corrupt_transfer = 0.0;

    [[nodiscard]] const Sweep* sweep(const std::string& axis) const {
        for (const Sweep& s : sweeps) {
            if (s.axis == axis) {
                return &s;
            }
        }
        return nullptr;
    }
};

double real_of(const json& j, double tau_prime_value, const std::string& where) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        return parse_real(j.get<std::string>(), tau_prime_value);
    }
    throw ConfigError(where + ": expected a number or a numeric string");
}

std::vector<double> reals_of(const json& j, double tau_prime_value, const std::string& where) {
    std::vector<double> out;
    if (j.is_array()) {
        for (const json& e : j) {
            out.push_back(real_of(e, tau_prime_value, where));
        }
        if (out.empty()) {
            throw ConfigError(where + ": list must not be empty");
        }
    } else {
        out.push_back(real_of(j, tau_prime_value, where));
    }
    return out;
}

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) {
        throw ConfigError(where + ": missing '" + key + "'");
    }
    return j.at(key);
}

Scenario parse_scenario(const json& root) {
    Scenario s;
    const json& game = require(root, "game", "config");
    s.v_s = real_of(require(game, "seller_belief", "game"), 0.0, "game.seller_belief");
    const double tp = tau_prime(GameConfig(0.0, Belief(s.v_s)));
    s.taus = reals_of(require(game, "tau", "game"), tp, "game.tau");

    const json& buyer = require(root, "buyer", "config");
    const bool has_binary = buyer.contains("binary");
    const bool has_continuous = buyer.contains("continuous");
    if (has_binary == has_continuous) {
        throw ConfigError("buyer: exactly one of 'binary' and 'continuous' is required");
    }
    if (has_binary) {
        const json& b = buyer.at("binary");
        s.binary = BinaryBuyer{real_of(require(b, "v_low", "buyer.binary"), tp, "buyer.binary.v_low"),
                               real_of(require(b, "v_high", "buyer.binary"), tp, "buyer.binary.v_high"),
                               reals_of(require(b, "phi", "buyer.binary"), tp, "buyer.binary.phi")};
    } else {
        const json& c = buyer.at("continuous");
        s.continuous = ContinuousBuyer{require(c, "distribution", "buyer.continuous").get<std::string>(),
                                       c.value("params", json::object())};
    }

    if (root.contains("sweep")) {
        const json& sw = root.at("sweep");
        for (const json& axis : sw.is_array() ? sw : json::array({sw})) {
            const std::string name = require(axis, "axis", "sweep").get<std::string>();
            if (name != "tau" && name != "v_s" && name != "phi") {
                throw ConfigError("sweep.axis must be one of tau, v_s, phi; got '" + name + "'");
            }
            if (s.sweep(name) != nullptr) {
                throw ConfigError("sweep axis '" + name + "' given twice");
            }
            const double from = real_of(require(axis, "from", "sweep"), tp, "sweep.from");
            const double to = real_of(require(axis, "to", "sweep"), tp, "sweep.to");
            const int steps = require(axis, "steps", "sweep").get<int>();
            s.sweeps.push_back({name, linspace(from, to, steps)});
        }
    }
    if (root.contains("mc")) {
        const json& mc = root.at("mc");
        s.mc.samples = mc.value("samples", s.mc.samples);
        s.mc.seed = mc.value("seed", s.mc.seed);
    }
    if (root.contains("virtual_surplus")) {
        const json& vs = root.at("virtual_surplus");
        s.virtual_surplus = VirtualSurplusSpec{real_of(require(vs, "v_b", "virtual_surplus"), tp, "virtual_surplus.v_b"),
                                               reals_of(require(vs, "v_s", "virtual_surplus"), tp, "virtual_surplus.v_s")};
    }
    if (root.contains("verify")) {
        s.corrupt_transfer = root.at("verify").value("corrupt_transfer", 0.0);
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config '" + path + "'");
    }
    json root;
    try {
        root = json::parse(in, nullptr, true, true);
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }
    try {
        return parse_scenario(root);
    } catch (const json::exception& e) {
        throw ConfigError("config schema error in '" + path + "': " + e.what());
    }
}

TypeDistribution make_distribution(const ContinuousBuyer& c) {
    const auto p = [&](const char* key) {
        return real_of(require(c.params, key, "buyer.continuous.params"), 0.0, std::string("params.") + key);
    };
    if (c.distribution == "uniform") {
        return TypeDistribution::uniform();
    }
    if (c.distribution == "linear") {
        return TypeDistribution::linear(p("slope"));
    }
    if (c.distribution == "truncated_normal") {
        return TypeDistribution::truncated_normal(p("mean"), p("sd"));
    }
    if (c.distribution == "beta") {
        return TypeDistribution::beta(p("a"), p("b"));
    }
    if (c.distribution == "bimodal") {
        return TypeDistribution::bimodal(p("mean_a"), p("mean_b"), p("sd"), p("weight"));
    }
    throw ConfigError("unknown distribution '" + c.distribution +
                      "' (expected uniform, linear, truncated_normal, beta, bimodal)");
}

std::string suffixed(const std::string& stem, const std::string& ext, std::size_t index, std::size_t count) {
    return count > 1 ? stem + "_" + std::to_string(index) + ext : stem + ext;
}

void write_menu_json(const fs::path& path, const BinaryMenu& m) {
    nlohmann::ordered_json j;
    j["I_low"] = m.I_low.value();
    j["I_high"] = m.I_high.value();
    j["t_low"] = m.t_low;
    j["t_high"] = m.t_high;
    j["profit"] = m.expected_profit;
    std::ofstream out(path);
    out << j.dump(2) << '\n';
}

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::optional<int> grid;
};

void apply(Scenario& s, const Overrides& o) {
    if (o.seed) {
        s.mc.seed = *o.seed;
    }
    if (o.samples) {
        s.mc.samples = *o.samples;
    }
    if (o.grid) {
        for (Sweep& sw : s.sweeps) {
            sw.values = linspace(sw.values.front(), sw.values.back(), *o.grid);
        }
    }
}

void cmd_binary(const Scenario& s, const fs::path& out_dir, std::ostream& log) {
    if (!s.binary) {
        throw ConfigError("the binary command needs a buyer.binary block");
    }
    if (s.taus.size() != 1) {
        throw ConfigError("the binary command takes a single game.tau; sweep tau instead");
    }
    if (s.sweep("phi") != nullptr && s.binary->phis.size() > 1) {
        throw ConfigError("give phi either as a list or as a sweep axis, not both");
    }
    const std::vector<double> phis = s.sweep("phi") ? s.sweep("phi")->values : s.binary->phis;
    const GameConfig cfg(s.taus.front(), Belief(s.v_s));
    const Belief v_low(s.binary->v_low);
    const Belief v_high(s.binary->v_high);
    fs::create_directories(out_dir);

    for (std::size_t i = 0; i < phis.size(); ++i) {
        const BinaryScenario scenario(v_low, v_high, phis[i], cfg);
        write_menu_json(out_dir / suffixed("menu", ".json", i, phis.size()), solve(scenario));
    }
    if (s.sweeps.empty()) {
        return;
    }
    const std::vector<double> v_s_grid = s.sweep("v_s") ? s.sweep("v_s")->values : std::vector<double>{s.v_s};
    const std::vector<double> tau_grid = s.sweep("tau") ? s.sweep("tau")->values : s.taus;

    Csv grid(out_dir / "boundary_grid.csv",
             {"v_s", "tau", "phi", "I_low", "I_high", "t_low", "t_high", "profit", "regime"});
    Csv bounds(out_dir / "boundaries.csv", {"v_s", "phi", "tau_low", "tau_high"});
    for (const double phi : phis) {
        const BinaryScenario base(v_low, v_high, phi, cfg);
        for (const BoundaryGridRow& r : boundary_grid(base, v_s_grid, tau_grid)) {
            grid.write({num(r.v_s), num(r.tau), num(r.phi), num(r.menu.I_low.value()), num(r.menu.I_high.value()),
                        num(r.menu.t_low), num(r.menu.t_high), num(r.menu.expected_profit), r.regime});
        }
        for (const double v_s : v_s_grid) {
            const Boundaries b = boundaries(base.with_cfg(GameConfig(cfg.tau(), Belief(v_s))));
            bounds.row({v_s, phi, b.tau_low, b.tau_high});
        }
    }
    log << "wrote " << phis.size() * v_s_grid.size() * tau_grid.size() << " grid cells to "
        << (out_dir / "boundary_grid.csv").string() << '\n';
}

void cmd_continuous(const Scenario& s, const fs::path& out_dir, int grid_n, std::ostream& log) {
    if (!s.continuous) {
        throw ConfigError("the continuous command needs a buyer.continuous block");
    }
    if (s.sweep("v_s") != nullptr || s.sweep("phi") != nullptr) {
        throw ConfigError("continuous sweeps support the tau axis only");
    }
    const TypeDistribution dist = make_distribution(*s.continuous);
    const std::vector<double> grid = linspace(0.0, 1.0, grid_n);
    std::vector<StepMenu> menus;
    for (const double tau : s.taus) {
        menus.push_back(solve_dual(dist, GameConfig(tau, Belief(s.v_s))));
    }
    fs::create_directories(out_dir);

    for (std::size_t i = 0; i < s.taus.size(); ++i) {
        const GameConfig cfg(s.taus[i], Belief(s.v_s));
        const StepMenu& menu = menus[i];
        const VirtualValues pi(dist, cfg);
        Csv vv(out_dir / suffixed("virtual_values", ".csv", i, s.taus.size()),
               {"v_b", "pi_minus", "pi_plus", "lambda_star"});
        Csv mc(out_dir / suffixed("menu", ".csv", i, s.taus.size()), {"v_b", "I_star", "transfer"});
        for (const double v : grid) {
            vv.row({v, pi.pi_minus(v), pi.pi_plus(v), menu.lambda_star});
            mc.row({v, allocation(menu, Belief(v)).value(), transfer(menu, Belief(v))});
        }
        log << "tau=" << num(cfg.tau()) << ": thresholds " << num(menu.v_lo) << ", " << num(menu.v_hi)
            << (menu.regime == MenuRegime::no_information ? " (no information)" : "") << '\n';
    }

    const std::vector<double> profit_taus = s.sweep("tau") ? s.sweep("tau")->values : s.taus;
    Csv profits(out_dir / "profits.csv", {"tau", "profit_versioning", "profit_full", "profit_none"});
    for (const double tau : profit_taus) {
        const ProfitBaselines b = profit_baselines(dist, GameConfig(tau, Belief(s.v_s)));
        profits.row({tau, b.versioning, b.full_info, b.no_info});
    }

    if (s.virtual_surplus) {
        Csv vs(out_dir / "virtual_surplus.csv", {"v_s", "v_b", "I", "surplus"});
        for (const double v_s : s.virtual_surplus->v_s) {
            const VirtualValues pi(dist, GameConfig(s.taus.front(), Belief(v_s)));
            for (const double I : linspace(-1.0, 1.0, 201)) {
                vs.row({v_s, s.virtual_surplus->v_b, I, pi.surplus(I, s.virtual_surplus->v_b)});
            }
        }
    }
}

// ----- verification battery -----

OracleReport one_sided(std::string label, double closed_form, double estimate, double gap, double tolerance) {
    OracleReport r = make_report(std::move(label), closed_form, estimate, gap, tolerance);
    r.pass = r.pass && estimate <= closed_form + 1e-9;
    return r;
}

std::string describe(const BinaryScenario& s) {
    std::ostringstream os;
    os << "(v_low=" << s.v_low().p0() << ",v_high=" << s.v_high().p0() << ",phi=" << s.phi()
       << ",v_s=" << s.cfg().v_s() << ",tau=" << s.cfg().tau() << ")";
    return os.str();
}

std::string describe(const TypeDistribution& d, const GameConfig& cfg) {
    std::ostringstream os;
    os << "(" << d.name() << ",v_s=" << cfg.v_s() << ",tau=" << cfg.tau() << ")";
    return os.str();
}

void binary_checks(const BinaryScenario& s, std::vector<OracleReport>& out) {
    constexpr int kGrid = 201;
    const BinaryMenu menu = solve(s);
    const BinaryMenu bf = brute_force_binary(s, kGrid);
    const double h = 1.0 / (kGrid - 1);
    out.push_back(one_sided("binary_brute_force" + describe(s), menu.expected_profit, bf.expected_profit, 0.0,
                            (4.0 + 2.0 * s.cfg().tau()) * h));
    const BinaryMenu lp = solve_by_vertex_enumeration(s);
    out.push_back(make_report("binary_vertex_enumeration" + describe(s), menu.expected_profit, lp.expected_profit,
                              0.0, 1e-12));
    out.push_back(make_report("binary_feasibility" + describe(s), 0.0,
                              std::max(0.0, max_constraint_violation(s, menu)), 0.0, 1e-12));
}

void continuous_checks(const TypeDistribution& d, const GameConfig& cfg, const McConfig& mc, double corrupt,
                       std::vector<OracleReport>& out) {
    const StepMenu menu = solve_dual(d, cfg);
    const std::string tag = describe(d, cfg);
    out.push_back(make_report("profit_routes" + tag, expected_profit(menu, d, cfg),
                              expected_profit_direct(menu, d, cfg), 0.0, 1e-9));
    out.push_back(one_sided("step_optimality" + tag, expected_profit(menu, d, cfg),
                            brute_force_continuous(d, cfg, 401, 5), 0.0, 1e-5));
    OracleReport env = envelope_check(menu, 1e-4);
    env.label += tag;
    out.push_back(env);
    if (d.is_uniform()) {
        DualOptions bisect;
        bisect.closed_form_fast_path = false;
        out.push_back(make_report("dual_closed_form_vs_bisection" + tag, menu.lambda_star,
                                  solve_dual(d, cfg, bisect).lambda_star, 0.0, 1e-6));
    }
    for (const double v : {0.1, 0.4, 0.6, 0.9}) {
        out.push_back(mc_gain(allocation(menu, Belief(v)), Belief(v), mc));
    }
    if (corrupt != 0.0) {
        MenuSchedule bad = schedule_of(menu);
        const auto base = bad.transfer;
        bad.transfer = [base, menu, corrupt](double v) {
            return base(v) + (v >= menu.v_lo && v <= menu.v_hi ? corrupt : 0.0);
        };
        OracleReport r = envelope_check(bad, 1e-4);
        r.label = "envelope_check_corrupted_transfer" + tag;
        out.push_back(r);
    }
}

std::vector<OracleReport> default_battery(const McConfig& mc) {
    std::vector<OracleReport> out;
    for (const auto& [I, v] : std::vector<std::pair<double, double>>{
             {0.0, 0.5}, {-1.0, 0.3}, {0.5, 0.75}, {-0.5, 0.2}, {0.25, 0.9}, {1.0, 0.6}}) {
        out.push_back(mc_gain(Informativeness(I), Belief(v), mc));
    }
    for (const auto& [I, tau, v_s] : std::vector<std::tuple<double, double, double>>{
             {1.0, 0.8, 0.3}, {0.0, 1.0, 0.3}, {0.5, 1.0, 0.5}, {-0.5, 2.0, 0.7}, {-1.0, 1.5, 0.9}}) {
        out.push_back(mc_cost(Informativeness(I), GameConfig(tau, Belief(v_s)), mc));
    }

    double worst = 0.0;
    for (int a = 0; a <= 40; ++a) {
        const double v = a / 40.0;
        const FeasibleBand band = feasible_band(Belief(v));
        for (int b = 0; b <= 40; ++b) {
            const double I = band.lo + (band.hi - band.lo) * b / 40.0;
            const Informativeness inf(std::clamp(I, -1.0, 1.0));
            worst = std::max(worst, std::abs(enumerated_gain(concentrate(inf), Belief(v)) - gain(inf, Belief(v))));
        }
    }
    out.push_back(make_report("enumerated_gain(feasible grid)", 0.0, worst, 0.0, 1e-12));

    for (const double tau : {0.0, 0.2, 0.5}) {
        binary_checks(BinaryScenario(Belief(5.0 / 6), Belief(2.0 / 3), 1.0 / 3, GameConfig(tau, Belief(0.0))), out);
    }
    const BinaryScenario nc(Belief(1.0 / 6), Belief(2.0 / 3), 0.5, GameConfig(0.0, Belief(1.0)));
    binary_checks(nc, out);
    binary_checks(nc.with_cfg(GameConfig(1.0, Belief(0.25))), out);
    out.push_back(make_report("noncongruent_allocation_bound" + describe(nc), noncongruent_allocation_bound(nc),
                              solve(nc).I_low.value(), 0.0, 1e-12));

    const BinaryScenario cg(Belief(5.0 / 6), Belief(2.0 / 3), 1.0 / 3, GameConfig(0.0, Belief(0.0)));
    const Boundaries b = boundaries(cg);
    const auto regime_at = [&](double tau) { return regime_label(solve(cg.with_cfg(GameConfig(tau, Belief(0.0))))); };
    const bool switches = regime_at(b.tau_low - 1e-3) != regime_at(b.tau_low + 1e-3) &&
                          regime_at(b.tau_high - 1e-3) != regime_at(b.tau_high + 1e-3);
    out.push_back(make_report("congruent_regime_switch_at_boundaries", 1.0, switches ? 1.0 : 0.0, 0.0, 0.0));

    continuous_checks(TypeDistribution::uniform(), GameConfig(0.0, Belief(0.5)), mc, 0.0, out);
    continuous_checks(TypeDistribution::uniform(), GameConfig(1.0, Belief(0.8)), mc, 0.0, out);
    continuous_checks(TypeDistribution::uniform(), GameConfig(3.0, Belief(0.8)), mc, 0.0, out);
    continuous_checks(TypeDistribution::linear(1.0), GameConfig(0.5, Belief(0.3)), mc, 0.0, out);
    continuous_checks(TypeDistribution::truncated_normal(0.5, 1.0), GameConfig(0.5, Belief(0.1)), mc, 0.0, out);
    return out;
}

std::vector<OracleReport> scenario_battery(const Scenario& s) {
    std::vector<OracleReport> out;
    for (const double tau : s.taus) {
        const GameConfig cfg(tau, Belief(s.v_s));
        for (const double I : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
            out.push_back(mc_cost(Informativeness(I), cfg, s.mc));
        }
        if (s.binary) {
            for (const double phi : s.binary->phis) {
                const BinaryScenario bs(Belief(s.binary->v_low), Belief(s.binary->v_high), phi, cfg);
                binary_checks(bs, out);
                const BinaryMenu m = solve(bs);
                out.push_back(mc_gain(m.I_low, bs.v_low(), s.mc));
                out.push_back(mc_gain(m.I_high, bs.v_high(), s.mc));
            }
        } else {
            continuous_checks(make_distribution(*s.continuous), cfg, s.mc, s.corrupt_transfer, out);
        }
    }
    return out;
}

int cmd_verify(const std::optional<Scenario>& s, const McConfig& mc, std::ostream& out, std::ostream& log) {
    const std::vector<OracleReport> reports = s ? scenario_battery(*s) : default_battery(mc);
    std::size_t failed = 0;
    for (const OracleReport& r : reports) {
        out << to_json_line(r) << '\n';
        if (!r.pass) {
            ++failed;
            log << "FAIL " << r.label << ": closed_form=" << num(r.closed_form) << " estimate=" << num(r.estimate)
                << '\n';
        }
    }
    log << reports.size() - failed << "/" << reports.size() << " checks passed\n";
    return failed == 0 ? kOk : kVerifyFailed;
}

}  // namespace

double parse_real(const std::string& text, double tau_prime_value) {
    const std::string t = trim(text);
    const std::string key = "tau_prime";
    if (const auto at = t.find(key); at != std::string::npos) {
        const std::string before = trim(t.substr(0, at));
        const std::string after = trim(t.substr(at + key.size()));
        double value = tau_prime_value;
        if (!before.empty()) {
            if (before.back() != '*') {
                throw ConfigError("unsupported expression '" + text + "'");
            }
            value *= parse_plain(before.substr(0, before.size() - 1));
        }
        if (!after.empty()) {
            if (after.front() != '/') {
                throw ConfigError("unsupported expression '" + text + "'");
            }
            value /= parse_plain(after.substr(1));
        }
        return value;
    }
    if (const auto slash = t.find('/'); slash != std::string::npos) {
        const double den = parse_plain(t.substr(slash + 1));
        if (den == 0.0) {
            throw ConfigError("zero denominator in '" + text + "'");
        }
        return parse_plain(t.substr(0, slash)) / den;
    }
    return parse_plain(t);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Price and screen information sold to a competing buyer."};
    app.require_subcommand(1);

    std::vector<double> gain_I;
    std::string gain_out;
    auto* gain_cmd = app.add_subcommand("gain-curve", "Buyer gain over a 501-point type grid");
    gain_cmd->add_option("--I", gain_I, "Informativeness values in [-1, 1]")
        ->required()
        ->delimiter(',')
        ->check(CLI::Range(-1.0, 1.0));
    gain_cmd->add_option("--out", gain_out, "Output CSV path")->required();

    std::string config_path;
    std::string out_dir;
    Overrides overrides;
    const auto common = [&](CLI::App* sub, bool needs_out) {
        sub->add_option("--config", config_path, "Scenario file (JSON)")->check(CLI::ExistingFile);
        auto* o = sub->add_option("--out", out_dir, "Output directory");
        if (needs_out) {
            o->required();
        }
        sub->add_option("--seed", overrides.seed, "Monte-Carlo seed");
        sub->add_option("--samples", overrides.samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
        sub->add_option("--grid", overrides.grid, "Points per sweep axis / type grid")->check(CLI::Range(2, 100000));
    };
    auto* binary_cmd = app.add_subcommand("binary", "Two-type optimal menu and decision-boundary grid");
    common(binary_cmd, true);
    binary_cmd->get_option("--config")->required();
    auto* continuous_cmd = app.add_subcommand("continuous", "Continuum-of-types menu, virtual values, profits");
    common(continuous_cmd, true);
    continuous_cmd->get_option("--config")->required();
    auto* verify_cmd = app.add_subcommand("verify", "Run the oracle battery; JSON lines on stdout");
    common(verify_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (*gain_cmd) {
            Csv csv(gain_out, {"v_b", "I", "gain"});
            for (const double I : gain_I) {
                for (const double v : linspace(0.0, 1.0, 501)) {
                    csv.row({v, I, gain(Informativeness(I), Belief(v))});
                }
            }
            return kOk;
        }
        std::optional<Scenario> scenario;
        if (!config_path.empty()) {
            scenario = load_scenario(config_path);
            apply(*scenario, overrides);
        }
        if (*binary_cmd) {
            cmd_binary(*scenario, out_dir, err);
            return kOk;
        }
        if (*continuous_cmd) {
            cmd_continuous(*scenario, out_dir, overrides.grid.value_or(501), err);
            return kOk;
        }
        McConfig mc;
        mc.samples = overrides.samples.value_or(mc.samples);
        mc.seed = overrides.seed.value_or(mc.seed);
        if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            std::ofstream file(fs::path(out_dir) / "verify.jsonl");
            std::ostringstream buffer;
            const int code = cmd_verify(scenario, mc, buffer, err);
            file << buffer.str();
            out << buffer.str();
            return code;
        }
        return cmd_verify(scenario, mc, out, err);
    } catch (const IrregularDistributionError& e) {
        err << "error: " << e.what() << '\n';
        return kConfig;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kConfig;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kConfig;
    }
}

}  // namespace infoprice::cli
