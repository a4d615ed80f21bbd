#include <doctest.h>

#include <cmath>

#include "infoprice/distribution.hpp"
#include "infoprice/error.hpp"
#include "infoprice/quadrature.hpp"

using namespace infoprice;

TEST_CASE("integrate") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0) == doctest::Approx(std::exp(1.0) - 1.0));
    CHECK(integrate([](double) { return 1.0; }, 0.3, 0.3) == 0.0);
    CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0),
                    QuadratureError);
}

TEST_CASE("built-in families are normalized and consistent") {
    for (const TypeDistribution& d :
         {TypeDistribution::uniform(), TypeDistribution::linear(1.5), TypeDistribution::linear(-2.0),
          TypeDistribution::truncated_normal(0.4, 0.2), TypeDistribution::beta(2.0, 3.0),
          TypeDistribution::bimodal(0.05, 0.95, 0.02, 0.5)}) {
        CAPTURE(d.name());
        CHECK(d.cdf(0.0) == doctest::Approx(0.0));
        CHECK(d.cdf(1.0) == doctest::Approx(1.0));
        CHECK(integrate([&](double v) { return d.density(v); }, 0.0, 1.0, 1e-12, 1e-12) ==
              doctest::Approx(1.0).epsilon(1e-9));
        CHECK(integrate([&](double v) { return d.density(v); }, 0.0, 0.37, 1e-12, 1e-12) ==
              doctest::Approx(d.cdf(0.37)).epsilon(1e-9));
    }
    CHECK(TypeDistribution::uniform().is_uniform());
    CHECK_FALSE(TypeDistribution::linear(0.0).is_uniform());
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(TypeDistribution::linear(2.5), DomainError);
    CHECK_THROWS_AS(TypeDistribution::truncated_normal(0.5, 0.0), DomainError);
    CHECK_THROWS_AS(TypeDistribution::beta(0.5, 2.0), DomainError);
    CHECK_THROWS_AS(TypeDistribution::bimodal(0.2, 0.8, 0.1, 1.5), DomainError);
}

TEST_CASE("inconsistent density/cdf pairs are rejected") {
    const auto identity = [](double v) { return v; };
    CHECK_THROWS_AS(TypeDistribution("bad-mass", [](double) { return 2.0; }, identity), DomainError);
    CHECK_THROWS_AS(TypeDistribution("bad-end", [](double) { return 1.0; }, [](double v) { return 0.5 * v; }),
                    DomainError);
    CHECK_THROWS_AS(TypeDistribution("negative", [](double v) { return v < 0.5 ? -1.0 : 3.0; },
                                     [](double v) { return v < 0.5 ? -v : 3.0 * v - 2.0; }),
                    DomainError);
    CHECK_NOTHROW(TypeDistribution("custom", [](double v) { return 2.0 * v; }, [](double v) { return v * v; }));
}
