#pragma once

#include <functional>

namespace infoprice {

/// Adaptive Gauss-Kronrod integral of f over [a, b]. Throws QuadratureError
/// when the error estimate exceeds abs_tol + rel_tol |result|.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-12,
                 double rel_tol = 1e-10);

}  // namespace infoprice
