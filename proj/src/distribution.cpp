#include "infoprice/distribution.hpp"

#include <algorithm>
#include <boost/math/distributions/beta.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "infoprice/error.hpp"
#include "infoprice/quadrature.hpp"

namespace infoprice {
namespace {

constexpr int kConsistencyCells = 256;
constexpr double kConsistencyTolerance = 1e-6;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

struct TruncatedNormal {
    double mean;
    double sd;
    double lower_mass;
    double mass;

    TruncatedNormal(double mean_, double sd_) : mean(mean_), sd(sd_) {
        lower_mass = normal_cdf(-mean / sd);
        mass = normal_cdf((1.0 - mean) / sd) - lower_mass;
    }

    [[nodiscard]] double density(double v) const {
        const double z = (v - mean) / sd;
        return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi) * mass);
    }

    [[nodiscard]] double cdf(double v) const {
        if (v <= 0.0) {
            return 0.0;
        }
        if (v >= 1.0) {
            return 1.0;
        }
        return (normal_cdf((v - mean) / sd) - lower_mass) / mass;
    }
};

std::string format_name(const char* family, std::initializer_list<std::pair<const char*, double>> params) {
    std::ostringstream out;
    out << family << '(';
    bool first = true;
    for (const auto& [key, value] : params) {
        out << (first ? "" : ", ") << key << '=' << value;
        first = false;
    }
    out << ')';
    return out.str();
}

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw DomainError(what);
    }
}

}  // namespace

TypeDistribution::TypeDistribution(std::string name, Fn density, Fn cdf)
    : name_(std::move(name)), density_(std::move(density)), cdf_(std::move(cdf)) {
    require(static_cast<bool>(density_) && static_cast<bool>(cdf_), name_ + ": density and cdf are required");
    require(std::abs(cdf_(0.0)) <= 1e-12, name_ + ": cdf(0) must be 0");
    require(std::abs(cdf_(1.0) - 1.0) <= 1e-12, name_ + ": cdf(1) must be 1");
    double previous = cdf_(0.0);
    for (int k = 1; k <= kConsistencyCells; ++k) {
        const double a = static_cast<double>(k - 1) / kConsistencyCells;
        const double b = static_cast<double>(k) / kConsistencyCells;
        const double Fb = cdf_(b);
        require(Fb >= previous - 1e-15, name_ + ": cdf decreases near v=" + std::to_string(b));
        require(density_(a) >= 0.0 && density_(b) >= 0.0, name_ + ": negative density near v=" + std::to_string(b));
        const double mass = integrate(density_, a, b, 1e-10, 1e-10);
        require(std::abs(mass - (Fb - previous)) <= kConsistencyTolerance,
                name_ + ": cdf is not the integral of the density on [" + std::to_string(a) + ", " +
                    std::to_string(b) + "]");
        previous = Fb;
    }
}

TypeDistribution TypeDistribution::uniform() {
    TypeDistribution d("uniform", [](double) { return 1.0; }, [](double v) { return std::clamp(v, 0.0, 1.0); });
    d.uniform_ = true;
    return d;
}

TypeDistribution TypeDistribution::linear(double slope) {
    require(std::abs(slope) <= 2.0, "linear density needs |slope| <= 2");
    return {format_name("linear", {{"slope", slope}}), [slope](double v) { return 1.0 + slope * (v - 0.5); },
            [slope](double v) {
                const double x = std::clamp(v, 0.0, 1.0);
                return x + 0.5 * slope * (x * x - x);
            }};
}

TypeDistribution TypeDistribution::truncated_normal(double mean, double sd) {
    require(sd > 0.0 && std::isfinite(mean), "truncated normal needs sd > 0 and a finite mean");
    const TruncatedNormal tn(mean, sd);
    require(tn.mass > 1e-12, "truncated normal puts no mass on [0, 1]");
    return {format_name("truncated_normal", {{"mean", mean}, {"sd", sd}}),
            [tn](double v) { return tn.density(v); }, [tn](double v) { return tn.cdf(v); }};
}

TypeDistribution TypeDistribution::beta(double a, double b) {
    require(a >= 1.0 && b >= 1.0, "beta distribution needs a, b >= 1");
    const boost::math::beta_distribution<double> dist(a, b);
    return {format_name("beta", {{"a", a}, {"b", b}}),
            [dist](double v) { return boost::math::pdf(dist, std::clamp(v, 0.0, 1.0)); },
            [dist](double v) { return boost::math::cdf(dist, std::clamp(v, 0.0, 1.0)); }};
}

TypeDistribution TypeDistribution::bimodal(double mean_a, double mean_b, double sd, double weight) {
    require(weight >= 0.0 && weight <= 1.0, "mixture weight must lie in [0, 1]");
    require(sd > 0.0, "bimodal components need sd > 0");
    const TruncatedNormal a(mean_a, sd);
    const TruncatedNormal b(mean_b, sd);
    require(a.mass > 1e-12 && b.mass > 1e-12, "bimodal component puts no mass on [0, 1]");
    return {format_name("bimodal", {{"mean_a", mean_a}, {"mean_b", mean_b}, {"sd", sd}, {"weight", weight}}),
            [=](double v) { return weight * a.density(v) + (1.0 - weight) * b.density(v); },
            [=](double v) { return weight * a.cdf(v) + (1.0 - weight) * b.cdf(v); }};
}

}  // namespace infoprice
