#include "mellincalc/quadrature.hpp"

#include <cmath>
#include <cstdlib>

namespace mellincalc {

namespace {

template <class T>
T simpson(const std::function<T(double)>& f, double a, double m, double b, T fa, T fm, T fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class T>
T adapt(const std::function<T(double)>& f, double a, double m, double b, T fa, T fm, T fb,
        T whole, double tol, int depth) {
    double l = 0.5 * (a + m), r = 0.5 * (m + b);
    T fl = f(l), fr = f(r);
    T left = simpson(f, a, l, m, fa, fl, fm);
    T right = simpson(f, m, r, b, fm, fr, fb);
    T sum = left + right;
    if (depth <= 0 || std::abs(sum - whole) <= 15.0 * tol) return sum + (sum - whole) / 15.0;
    return adapt(f, a, l, m, fa, fl, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, r, b, fm, fr, fb, right, 0.5 * tol, depth - 1);
}

template <class T>
T integrate_impl(const std::function<T(double)>& f, double a, double b, double rel_tol,
                 int max_depth) {
    if (a == b) return T(0);
    // coarse scan to scale the absolute tolerance
    T coarse(0);
    const int n = 32;
    double h = (b - a) / n;
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        T v = f(a + (i + 0.5) * h);
        coarse += v * h;
        scale = std::max(scale, std::abs(v) * (b - a));
    }
    double tol = rel_tol * std::max({std::abs(coarse), scale * 1e-3, 1e-300});
    T total(0);
    for (int i = 0; i < n; ++i) {
        double x0 = a + i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
        T f0 = f(x0), fm = f(xm), f1 = f(x1);
        T whole = simpson(f, x0, xm, x1, f0, fm, f1);
        total += adapt(f, x0, xm, x1, f0, fm, f1, whole, tol / n, max_depth);
    }
    return total;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 int max_depth) {
    return integrate_impl<double>(f, a, b, rel_tol, max_depth);
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b, double rel_tol, int max_depth) {
    return integrate_impl<std::complex<double>>(f, a, b, rel_tol, max_depth);
}

ImproperResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                     const QuadConfig& cfg) {
    ImproperResult res;
    double lo = a;
    double hi = a * 2.0;
    int quiet = 0;  // consecutive panels below tolerance
    double prev_inc = 0.0;
    int growing = 0;
    for (int p = 0; p < cfg.max_panel_doublings; ++p) {
        double inc = integrate(f, lo, hi, cfg.rel_tol, cfg.max_depth);
        res.value += inc;
        res.last_increment = inc;
        res.panels = p + 1;
        double mag = std::abs(inc);
        if (mag <= cfg.rel_tol * std::max(std::abs(res.value), 1e-300)) {
            if (++quiet >= 2) return res;
        } else {
            quiet = 0;
        }
        // increments that stop decaying signal a divergent tail (e.g. 1/s against ds)
        if (p > 4 && mag > 0.45 * prev_inc) {
            if (++growing >= 8) {
                res.divergent = true;
                return res;
            }
        } else {
            growing = 0;
        }
        prev_inc = mag;
        lo = hi;
        hi *= 2.0;
    }
    res.divergent = std::abs(res.last_increment) >
                    cfg.rel_tol * std::max(std::abs(res.value), 1e-300);
    return res;
}

}  // namespace mellincalc
