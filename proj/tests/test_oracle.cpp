#include <doctest.h>

#include <cmath>

#include "infoprice/error.hpp"
#include "infoprice/oracle.hpp"

using namespace infoprice;

TEST_CASE("report gate is max(3 sigma, tolerance)") {
    CHECK(make_report("x", 1.0, 1.0 + 2.9e-3, 1e-3, 0.0).pass);
    CHECK_FALSE(make_report("x", 1.0, 1.0 + 3.1e-3, 1e-3, 0.0).pass);
    CHECK(make_report("x", 1.0, 1.0 + 3.1e-3, 1e-3, 5e-3).pass);
}

TEST_CASE("Monte-Carlo gain") {
    const McConfig big{1'000'000, 42};
    CHECK(mc_gain(Informativeness(0.0), Belief(0.5), big).pass);
    CHECK(mc_gain(Informativeness(0.5), Belief(0.75), big).pass);
    const OracleReport flat = mc_gain(Informativeness(-1.0), Belief(0.3), {100'000, 1});
    CHECK(flat.pass);
    CHECK(flat.estimate == 0.0);
    CHECK_THROWS_AS((void)mc_gain(Informativeness(0.0), Belief(0.5), {0, 1}), DomainError);
}

TEST_CASE("Monte-Carlo cost, decoupled and coupled") {
    const McConfig big{1'000'000, 43};
    const OracleReport all = mc_cost(Informativeness(1.0), GameConfig(0.8, Belief(0.3)), big);
    CHECK(all.closed_form == doctest::Approx(0.24));
    CHECK(all.pass);
    const OracleReport full = mc_cost(Informativeness(0.0), GameConfig(1.0, Belief(0.3)), big);
    CHECK(full.closed_form == doctest::Approx(0.58));
    CHECK(full.pass);
    REQUIRE(full.coupled_closed_form.has_value());
    CHECK(*full.coupled_closed_form == doctest::Approx(1.0));
    CHECK(*full.coupled_estimate == doctest::Approx(1.0));
    for (const double I : {-0.7, 0.0, 0.6}) {
        CHECK(mc_cost(Informativeness(I), GameConfig(1.0, Belief(0.5)), {100'000, 44}).pass);
    }
}

TEST_CASE("seeded runs are bit-reproducible and seeds matter") {
    const McConfig mc{200'000, 7};
    const OracleReport a = mc_gain(Informativeness(0.3), Belief(0.6), mc);
    const OracleReport b = mc_gain(Informativeness(0.3), Belief(0.6), mc);
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
    const OracleReport c = mc_gain(Informativeness(0.3), Belief(0.6), {200'000, 8});
    CHECK(a.estimate != c.estimate);
    CHECK(to_json_line(a) == to_json_line(b));
}

TEST_CASE("continuous brute force") {
    const TypeDistribution u = TypeDistribution::uniform();
    CHECK(brute_force_continuous(u, GameConfig(0.0, Belief(0.5)), 401, 3) == doctest::Approx(0.125).epsilon(1e-9));
    const GameConfig convex(3.0, Belief(0.8));
    const double none = profit_baselines(u, convex).no_info;
    CHECK(brute_force_continuous(u, convex, 201, 5) <= none + 1e-6);
    // Seller neutrality: the best single-threshold pair does not move with tau.
    const double a = brute_force_continuous(u, GameConfig(0.0, Belief(0.5)), 101, 3);
    const double b = brute_force_continuous(u, GameConfig(7.0, Belief(0.5)), 101, 3);
    CHECK(a - b == doctest::Approx(7.0 / 2));
    CHECK_THROWS_AS((void)brute_force_continuous(u, convex, 101, 4), DomainError);
    CHECK_THROWS_AS((void)brute_force_continuous(u, convex, 101, 1), DomainError);
}

TEST_CASE("envelope check") {
    const TypeDistribution u = TypeDistribution::uniform();
    const StepMenu m = solve_dual(u, GameConfig(0.0, Belief(0.5)));
    const OracleReport ok = envelope_check(m, 1e-4);
    CHECK(ok.pass);
    CHECK(ok.estimate < 1e-5);
    CHECK(envelope_check(StepMenu{}, 1e-4).pass);

    for (const auto& [from, to] : {std::pair{0.0, m.v_lo}, std::pair{m.v_lo, m.v_hi}, std::pair{m.v_hi, 1.0}}) {
        MenuSchedule bad = schedule_of(m);
        const auto base = bad.transfer;
        bad.transfer = [base, from, to](double v) { return base(v) + (v >= from && v <= to ? 0.01 : 0.0); };
        CHECK_FALSE(envelope_check(bad, 1e-4).pass);
    }
    CHECK_THROWS_AS((void)envelope_check(m, 0.0), DomainError);
}

TEST_CASE("json line") {
    OracleReport r = make_report("label", 1.0, 1.5, 0.0, 0.1);
    CHECK(to_json_line(r) ==
          R"({"label":"label","closed_form":1.0,"estimate":1.5,"std_error":0.0,"tolerance":0.1,"pass":false})");
}
