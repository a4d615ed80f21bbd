#include "infoprice/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <string>

#include "infoprice/error.hpp"

namespace infoprice {

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol) {
    if (a == b) {
        return 0.0;
    }
    const auto converged = [&](double result, double error) {
        return std::isfinite(result) && error <= abs_tol + rel_tol * std::abs(result);
    };
    double error = 0.0;
    const double result =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, rel_tol, &error);
    if (converged(result, error)) {
        return result;
    }
    // Densities such as Beta(a, b) with 1 < a < 2 have an unbounded
    // derivative at the endpoint; the double-exponential rule copes with it.
    thread_local boost::math::quadrature::tanh_sinh<double> fallback;
    double l1 = 0.0;
    const double retry = fallback.integrate(f, a, b, rel_tol, &error, &l1);
    if (!converged(retry, error)) {
        throw QuadratureError("quadrature on [" + std::to_string(a) + ", " + std::to_string(b) +
                              "] did not converge (error estimate " + std::to_string(error) + ")");
    }
    return retry;
}

}  // namespace infoprice
