#pragma once

#include <functional>

namespace kslab {

// Double-exponential (tanh-sinh) quadrature on (a, b).  Tolerates integrable
// endpoint singularities; refines until successive levels agree to rel_tol.
double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-12, int max_level = 12);

// Composite trapezoid with m uniform panels on [a, b].
double integrate_trapezoid(const std::function<double(double)>& f, double a, double b, int m);

}  // namespace kslab
