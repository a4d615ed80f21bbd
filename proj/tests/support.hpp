#pragma once

#include <cstdint>
#include <random>

#include "infoprice/binary_menu.hpp"
#include "infoprice/continuous_menu.hpp"
#include "infoprice/distribution.hpp"
#include "infoprice/game.hpp"

namespace infoprice::testing {

// Seeded input generator for the property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    Belief belief() { return Belief(uniform(0.0, 1.0)); }

    GameConfig cfg(double tau_max) { return GameConfig(uniform(0.0, tau_max), belief()); }

    BinaryScenario binary(Congruence kind) {
        for (;;) {
            const double near = uniform(0.02, 0.48);
            const double far = uniform(near + 0.01, 0.499);
            const double vh = coin() ? 0.5 + near : 0.5 - near;
            const bool same_side = kind == Congruence::congruent;
            const double vl = (vh > 0.5) == same_side ? 0.5 + far : 0.5 - far;
            if (vl == 0.5 || vh == 0.5) {
                continue;
            }
            return {Belief(vl), Belief(vh), uniform(0.0, 1.0), cfg(3.0)};
        }
    }

    TypeDistribution distribution() {
        switch (integer(0, 3)) {
            case 0:
                return TypeDistribution::uniform();
            case 1:
                return TypeDistribution::linear(uniform(-2.0, 2.0));
            case 2:
                return TypeDistribution::truncated_normal(uniform(0.2, 0.8), uniform(0.3, 2.0));
            default:
                return TypeDistribution::beta(uniform(1.0, 2.5), uniform(1.0, 2.5));
        }
    }

    struct Regular {
        TypeDistribution dist;
        GameConfig cfg;
    };

    // Rejection-samples (distribution, config) pairs until the virtual
    // values are nondecreasing.
    Regular regular(double tau_max) {
        for (;;) {
            TypeDistribution d = distribution();
            const GameConfig c = cfg(tau_max);
            if (regularity_check(d, c, 1001)) {
                return {std::move(d), c};
            }
        }
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace infoprice::testing
