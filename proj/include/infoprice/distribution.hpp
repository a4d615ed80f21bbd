#pragma once

#include <functional>
#include <string>

namespace infoprice {

/// Density/CDF pair for buyer types on [0, 1]. The pair is checked for
/// consistency on construction: F(0) = 0, F(1) = 1, F nondecreasing, p >= 0,
/// and F(b) - F(a) matching the integral of p over every cell of a grid.
///
/// Both callables must be safe to invoke concurrently.
class TypeDistribution {
public:
    using Fn = std::function<double(double)>;

    /// Throws DomainError if the consistency check fails.
    TypeDistribution(std::string name, Fn density, Fn cdf);

    [[nodiscard]] double density(double v) const { return density_(v); }
    [[nodiscard]] double cdf(double v) const { return cdf_(v); }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }

    /// True only for the distribution built by uniform(); enables the
    /// closed-form dual in the continuous solver.
    [[nodiscard]] bool is_uniform() const noexcept { return uniform_; }

    static TypeDistribution uniform();

    /// p(v) = 1 + slope (v - 1/2); |slope| <= 2.
    static TypeDistribution linear(double slope);

    /// Normal(mean, sd) truncated to [0, 1].
    static TypeDistribution truncated_normal(double mean, double sd);

    /// Beta(a, b) with a, b >= 1 so the density is bounded.
    static TypeDistribution beta(double a, double b);

    /// Mixture weight * N(mean_a, sd) + (1 - weight) * N(mean_b, sd), each
    /// component truncated to [0, 1].
    static TypeDistribution bimodal(double mean_a, double mean_b, double sd, double weight);

private:
    std::string name_;
    Fn density_;
    Fn cdf_;
    bool uniform_ = false;
};

}  // namespace infoprice
