#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using infoprice::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "infoprice");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("infoprice_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& body) {
    const fs::path p = dir / "config.json";
    std::ofstream(p) << body;
    return p;
}

const char* kUniform = R"({
  "game": {"tau": [0, "tau_prime/2", "tau_prime"], "seller_belief": "4/5"},
  "buyer": {"continuous": {"distribution": "uniform"}},
  "sweep": {"axis": "tau", "from": 0, "to": "2*tau_prime", "steps": 5}
})";

}  // namespace

TEST_CASE("parse_real") {
    using infoprice::cli::parse_real;
    CHECK(parse_real("5/6", 0.0) == doctest::Approx(5.0 / 6));
    CHECK(parse_real(" 0.25 ", 0.0) == 0.25);
    CHECK(parse_real("tau_prime", 3.0) == 3.0);
    CHECK(parse_real("tau_prime/2", 3.0) == 1.5);
    CHECK(parse_real("2*tau_prime", 3.0) == 6.0);
    CHECK_THROWS(parse_real("abc", 0.0));
    CHECK_THROWS(parse_real("1/0", 0.0));
    CHECK_THROWS(parse_real("tau_prime+1", 0.0));
}

TEST_CASE("gain-curve") {
    const fs::path dir = scratch("gain");
    const Result r = invoke({"gain-curve", "--I", "0,0.5,-0.5", "--out", (dir / "g.csv").string()});
    REQUIRE(r.code == 0);
    const auto rows = lines(slurp(dir / "g.csv"));
    CHECK(rows.size() == 1504);
    CHECK(rows[0] == "v_b,I,gain");
    CHECK(std::find(rows.begin(), rows.end(), "0.5,0,0.5") != rows.end());

    CHECK(invoke({"gain-curve", "--I", "2", "--out", (dir / "bad.csv").string()}).code == infoprice::cli::kUsage);
    CHECK(invoke({"gain-curve", "--out", (dir / "bad.csv").string()}).code == infoprice::cli::kUsage);
    CHECK(invoke({}).code == infoprice::cli::kUsage);
}

TEST_CASE("binary command writes menus and grids") {
    const fs::path dir = scratch("binary");
    const fs::path cfg = write_config(dir, R"({
      "game": {"tau": 0, "seller_belief": 0},
      "buyer": {"binary": {"v_low": "5/6", "v_high": "2/3", "phi": ["1/3", "1/2"]}},
      "sweep": [{"axis": "v_s", "from": 0, "to": 1, "steps": 3}, {"axis": "tau", "from": 0, "to": 1, "steps": 4}]
    })");
    const Result r = invoke({"binary", "--config", cfg.string(), "--out", (dir / "out").string()});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "out" / "menu_0.json"));
    CHECK(fs::exists(dir / "out" / "menu_1.json"));
    CHECK(slurp(dir / "out" / "menu_0.json").find("\"I_low\"") != std::string::npos);
    const auto grid = lines(slurp(dir / "out" / "boundary_grid.csv"));
    CHECK(grid.size() == 1 + 2 * 3 * 4);
    CHECK(grid[0] == "v_s,tau,phi,I_low,I_high,t_low,t_high,profit,regime");
    CHECK(lines(slurp(dir / "out" / "boundaries.csv")).size() == 1 + 2 * 3);

    const Result regridded = invoke({"binary", "--config", cfg.string(), "--out", (dir / "g").string(), "--grid", "5"});
    REQUIRE(regridded.code == 0);
    CHECK(lines(slurp(dir / "g" / "boundary_grid.csv")).size() == 1 + 2 * 5 * 5);
}

TEST_CASE("binary command rejects invalid scenarios") {
    const fs::path dir = scratch("binary_bad");
    const fs::path cfg = write_config(dir, R"({
      "game": {"tau": 0, "seller_belief": 0},
      "buyer": {"binary": {"v_low": "5/6", "v_high": "2/3", "phi": 1.5}}
    })");
    const Result r = invoke({"binary", "--config", cfg.string(), "--out", (dir / "out").string()});
    CHECK(r.code == infoprice::cli::kConfig);
    CHECK(r.err.find("phi") != std::string::npos);

    const fs::path broken = write_config(dir, "{ not json");
    CHECK(invoke({"binary", "--config", broken.string(), "--out", (dir / "out").string()}).code ==
          infoprice::cli::kConfig);
    const fs::path both = write_config(dir, R"({"game": {"tau": 0, "seller_belief": 0},
      "buyer": {"binary": {"v_low": 0.9, "v_high": 0.6, "phi": 0.5}, "continuous": {"distribution": "uniform"}}})");
    CHECK(invoke({"binary", "--config", both.string(), "--out", (dir / "out").string()}).code ==
          infoprice::cli::kConfig);
    const fs::path axis = write_config(dir, R"({"game": {"tau": 0, "seller_belief": 0},
      "buyer": {"binary": {"v_low": 0.9, "v_high": 0.6, "phi": 0.5}},
      "sweep": {"axis": "v_b", "from": 0, "to": 1, "steps": 3}})");
    CHECK(invoke({"binary", "--config", axis.string(), "--out", (dir / "out").string()}).code ==
          infoprice::cli::kConfig);
}

TEST_CASE("continuous command writes one menu per tau and the profit sweep") {
    const fs::path dir = scratch("continuous");
    const fs::path cfg = write_config(dir, kUniform);
    const Result r = invoke({"continuous", "--config", cfg.string(), "--out", (dir / "out").string()});
    REQUIRE(r.code == 0);
    for (int i = 0; i < 3; ++i) {
        const auto menu = lines(slurp(dir / "out" / ("menu_" + std::to_string(i) + ".csv")));
        CHECK(menu.size() == 502);
        CHECK(menu[0] == "v_b,I_star,transfer");
        CHECK(lines(slurp(dir / "out" / ("virtual_values_" + std::to_string(i) + ".csv")))[0] ==
              "v_b,pi_minus,pi_plus,lambda_star");
    }
    const auto profits = lines(slurp(dir / "out" / "profits.csv"));
    CHECK(profits.size() == 6);
    CHECK(profits[0] == "tau,profit_versioning,profit_full,profit_none");

    const fs::path again = dir / "again";
    REQUIRE(invoke({"continuous", "--config", cfg.string(), "--out", again.string()}).code == 0);
    for (const auto& entry : fs::directory_iterator(dir / "out")) {
        CHECK(slurp(entry.path()) == slurp(again / entry.path().filename()));
    }
}

TEST_CASE("uniform menu at tau 0 prices the middle band at 1/4") {
    const fs::path dir = scratch("price");
    const fs::path cfg = write_config(dir, R"({"game": {"tau": 0, "seller_belief": 0.3},
      "buyer": {"continuous": {"distribution": "uniform"}}})");
    REQUIRE(invoke({"continuous", "--config", cfg.string(), "--out", (dir / "out").string()}).code == 0);
    const auto rows = lines(slurp(dir / "out" / "menu.csv"));
    CHECK(std::find(rows.begin(), rows.end(), "0.5,0,0.25") != rows.end());
}

TEST_CASE("irregular distributions name the failing type") {
    const fs::path dir = scratch("irregular");
    const fs::path cfg = write_config(dir, R"({"game": {"tau": 0, "seller_belief": 0.5},
      "buyer": {"continuous": {"distribution": "bimodal",
                               "params": {"mean_a": 0.05, "mean_b": 0.95, "sd": 0.02, "weight": 0.5}}}})");
    const Result r = invoke({"continuous", "--config", cfg.string(), "--out", (dir / "out").string()});
    CHECK(r.code == infoprice::cli::kConfig);
    CHECK(r.err.find("irregular") != std::string::npos);
    CHECK(r.err.find("v_b=") != std::string::npos);
}

TEST_CASE("verify: default battery passes and a corrupted transfer fails") {
    const Result ok = invoke({"verify", "--samples", "200000", "--seed", "3"});
    CHECK(ok.code == 0);
    for (const auto& line : lines(ok.out)) {
        CHECK(line.find("\"pass\":true") != std::string::npos);
    }

    const fs::path dir = scratch("verify");
    const fs::path cfg = write_config(dir, R"({"game": {"tau": 0, "seller_belief": 0.5},
      "buyer": {"continuous": {"distribution": "uniform"}},
      "mc": {"samples": 20000, "seed": 5},
      "verify": {"corrupt_transfer": 0.01}})");
    const Result bad = invoke({"verify", "--config", cfg.string()});
    CHECK(bad.code == infoprice::cli::kVerifyFailed);
    CHECK(bad.err.find("envelope_check_corrupted_transfer") != std::string::npos);
}
