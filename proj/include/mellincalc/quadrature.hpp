#pragma once

#include <complex>
#include <functional>

namespace mellincalc {

struct QuadConfig {
    double rel_tol = 1e-10;
    int max_panel_doublings = 60;  // improper integrals stop or flag divergence by then
    int max_depth = 30;            // adaptive bisection depth per panel
};

// Adaptive Simpson on a finite interval.  Handles integrands with isolated
// kinks (absolute values) by bisection; integrand must be finite on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, int max_depth = 30);

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b, double rel_tol = 1e-10,
                                       int max_depth = 30);

struct ImproperResult {
    double value = 0.0;
    bool divergent = false;
    double last_increment = 0.0;
    int panels = 0;
};

// Integral over [a, infinity) by octave panels in log s with doubling upper
// limits.  Stops when two consecutive panel increments fall below
// rel_tol * |accumulated|; flags divergence if the increments never decay.
ImproperResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                     const QuadConfig& cfg = {});

}  // namespace mellincalc
