#include "mellincalc/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mellincalc {

namespace {

double falling(double a, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (a - i);
    return r;
}

cplx cfalling(cplx a, int k) {
    cplx r = 1.0;
    for (int i = 0; i < k; ++i) r *= (a - (double)i);
    return r;
}

// --- derivatives of e^{-1/x} ------------------------------------------------
// d^n/dx^n e^{-1/x} = e^{-1/x} P_n(1/x) with P_0 = 1 and
// P_{n+1}(t) = t^2 (P_n(t) - P_n'(t)).
constexpr int kTransMax = 14;

const std::vector<std::vector<double>>& edge_polys() {
    static const std::vector<std::vector<double>> polys = [] {
        std::vector<std::vector<double>> p(kTransMax + 1);
        p[0] = {1.0};
        for (int n = 0; n < kTransMax; ++n) {
            const auto& cur = p[n];
            std::vector<double> nxt(cur.size() + 2, 0.0);
            for (size_t i = 0; i < cur.size(); ++i) {
                nxt[i + 2] += cur[i];                        // t^2 * P_n
                if (i >= 1) nxt[i + 1] -= (double)i * cur[i];  // -t^2 * P_n'
            }
            p[n + 1] = std::move(nxt);
        }
        return p;
    }();
    return polys;
}

double exp_edge_deriv(int n, double x) {
    // n-th derivative of e^{-1/x} for x > 0; identically 0 for x <= 0
    if (x <= 0.0) return 0.0;
    double e = std::exp(-1.0 / x);
    if (e == 0.0) return 0.0;
    const auto& c = edge_polys()[n];
    double t = 1.0 / x, acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return e * acc;
}

double transition_core(int order, double x) {
    // tau = u / (u + v), u = e^{-1/x}, v = e^{-1/(1-x)}
    if (x <= 0.0) return order == 0 ? 0.0 : 0.0;
    if (x >= 1.0) return order == 0 ? 1.0 : 0.0;
    std::vector<double> u(order + 1), w(order + 1);
    for (int n = 0; n <= order; ++n) {
        u[n] = exp_edge_deriv(n, x);
        double vn = exp_edge_deriv(n, 1.0 - x) * ((n % 2) ? -1.0 : 1.0);
        w[n] = u[n] + vn;
    }
    if (w[0] == 0.0) return order == 0 ? (x < 0.5 ? 0.0 : 1.0) : 0.0;
    // Leibniz on tau * w = u
    std::vector<double> tau(order + 1);
    std::vector<double> binom(order + 1, 1.0);
    tau[0] = u[0] / w[0];
    for (int n = 1; n <= order; ++n) {
        double s = u[n];
        double c = 1.0;
        for (int k = 0; k < n; ++k) {
            s -= c * tau[k] * w[n - k];
            c = c * (n - k) / (k + 1);
        }
        tau[n] = s / w[0];
    }
    return tau[order];
}

}  // namespace

double smooth_transition(double x) { return transition_core(0, x); }
double smooth_transition_deriv(int order, double x) {
    if (order > kTransMax) throw std::invalid_argument("smooth_transition_deriv: order too high");
    return transition_core(order, x);
}

namespace {

MultiplierSpec make_heat() {
    MultiplierSpec m;
    m.name = "heat";
    m.max_order = 16;
    m.value_at_zero = 1.0;
    m.eval = [](double s) -> cplx { return std::exp(-s); };
    m.deriv = [](int b, double s) -> cplx { return ((b % 2) ? -1.0 : 1.0) * std::exp(-s); };
    return m;
}

MultiplierSpec make_sheat() {
    MultiplierSpec m;
    m.name = "sheat";
    m.max_order = 16;
    m.value_at_zero = 0.0;
    m.eval = [](double s) -> cplx { return s * std::exp(-s); };
    // d^b [s e^{-s}] = (-1)^b (s - b) e^{-s}
    m.deriv = [](int b, double s) -> cplx {
        return ((b % 2) ? -1.0 : 1.0) * (s - b) * std::exp(-s);
    };
    return m;
}

MultiplierSpec make_br(double delta, bool psi_variant) {
    if (delta < 0.0) throw std::invalid_argument("bochner_riesz: delta must be >= 0");
    MultiplierSpec m;
    bool integral = std::abs(delta - std::round(delta)) < 1e-12;
    m.name = (psi_variant ? "br_psi:" : "bochner_riesz:") + std::to_string(delta);
    m.max_order = integral ? (int)std::lround(delta) + 4 : (int)std::floor(delta) + 1;
    m.value_at_zero = psi_variant ? 0.0 : 1.0;
    m.support_bound = 1.0;
    m.has_kink = true;
    m.kink_pos = 1.0;
    if (integral) {
        int d = (int)std::lround(delta);
        m.kink_jump = ((d % 2) ? -1.0 : 1.0) * std::tgamma(d + 1.0);
    }
    if (!psi_variant) {
        m.eval = [delta](double s) -> cplx {
            return s < 1.0 ? std::pow(1.0 - s, delta) : 0.0;
        };
        m.deriv = [delta](int b, double s) -> cplx {
            if (s > 1.0) return 0.0;
            double sgn = (b % 2) ? -1.0 : 1.0;
            double ff = falling(delta, b);
            if (s == 1.0)  // one-sided from the left
                return (delta - b > 0) ? 0.0 : (delta == b ? sgn * ff : 0.0);
            return sgn * ff * std::pow(1.0 - s, delta - b);
        };
    } else {
        m.eval = [delta](double s) -> cplx {
            return s < 1.0 ? s * std::pow(1.0 - s, delta) : 0.0;
        };
        m.deriv = [delta](int b, double s) -> cplx {
            if (s > 1.0) return 0.0;
            double sgn = (b % 2) ? -1.0 : 1.0;
            double f1 = falling(delta, b), f0 = b > 0 ? falling(delta, b - 1) : 0.0;
            if (s == 1.0) {
                double t1 = (delta - b > 0) ? 0.0 : (delta == b ? f1 : 0.0);
                double t0 = (b > 0 && delta - b + 1 <= 0) ? ((delta == b - 1) ? f0 : 0.0) : 0.0;
                return sgn * (t1 - b * t0);
            }
            double p = std::pow(1.0 - s, delta - b);
            return sgn * (f1 * p * s - b * f0 * p * (1.0 - s));
        };
    }
    return m;
}

double bump_deriv(int b, double s) {
    // support [1/2, 2], plateau [3/4, 3/2]
    if (s <= 0.5 || s >= 2.0) return 0.0;
    if (s < 0.75) return std::pow(4.0, b) * smooth_transition_deriv(b, 4.0 * (s - 0.5));
    if (s <= 1.5) return b == 0 ? 1.0 : 0.0;
    double sgn = (b % 2) ? -1.0 : 1.0;
    return sgn * std::pow(2.0, b) * smooth_transition_deriv(b, 2.0 * (2.0 - s));
}

MultiplierSpec make_bump() {
    MultiplierSpec m;
    m.name = "bump";
    m.max_order = 12;
    m.value_at_zero = 0.0;
    m.support_bound = 2.0;
    m.eval = [](double s) -> cplx { return bump_deriv(0, s); };
    m.deriv = [](int b, double s) -> cplx { return bump_deriv(b, s); };
    return m;
}

MultiplierSpec make_const(double v, const std::string& nm) {
    MultiplierSpec m;
    m.name = nm;
    m.max_order = 16;
    m.value_at_zero = v;
    m.eval = [v](double) -> cplx { return v; };
    m.deriv = [v](int b, double) -> cplx { return b == 0 ? v : 0.0; };
    return m;
}

MultiplierSpec make_power_iu(double u0) {
    MultiplierSpec m;
    m.name = "power_iu:" + std::to_string(u0);
    m.max_order = 16;
    m.is_real = (u0 == 0.0);
    // s^{iu0} has no limit at 0; the stored value is the u0 = 0 continuation
    m.value_at_zero = 1.0;
    cplx a(0.0, u0);
    m.eval = [a](double s) -> cplx {
        if (s == 0.0) return 1.0;
        return std::exp(a * std::log(s));
    };
    m.deriv = [a](int b, double s) -> cplx {
        if (b == 0) return s == 0.0 ? cplx(1.0) : std::exp(a * std::log(s));
        if (s == 0.0) return 0.0;
        return cfalling(a, b) * std::exp((a - (double)b) * std::log(s));
    };
    return m;
}

}  // namespace

MultiplierSpec builtin_catalog(const std::string& name, const std::vector<double>& params) {
    auto need = [&](size_t n) {
        if (params.size() != n)
            throw std::invalid_argument("catalog " + name + ": expected " + std::to_string(n) +
                                        " parameter(s)");
    };
    if (name == "heat") { need(0); return make_heat(); }
    if (name == "sheat") { need(0); return make_sheat(); }
    if (name == "bochner_riesz") { need(1); return make_br(params[0], false); }
    if (name == "br_psi") { need(1); return make_br(params[0], true); }
    if (name == "bump") { need(0); return make_bump(); }
    if (name == "zero") { need(0); return make_const(0.0, "zero"); }
    if (name == "one") { need(0); return make_const(1.0, "one"); }
    if (name == "power_iu") { need(1); return make_power_iu(params[0]); }
    throw std::invalid_argument("unknown catalog multiplier: " + name);
}

MultiplierSpec parse_multiplier(const std::string& text) {
    std::string name = text;
    std::vector<double> params;
    auto pos = text.find(':');
    if (pos != std::string::npos) {
        name = text.substr(0, pos);
        std::string rest = text.substr(pos + 1);
        for (char& c : rest)
            if (c == ':' || c == ',') c = ' ';
        std::istringstream is(rest);
        double v;
        while (is >> v) params.push_back(v);
    }
    return builtin_catalog(name, params);
}

MultiplierSpec scale_argument(const MultiplierSpec& m, double c) {
    if (c <= 0.0) throw std::invalid_argument("scale_argument: c must be positive");
    MultiplierSpec r = m;
    r.name = m.name + "@" + std::to_string(c);
    auto ev = m.eval;
    auto dv = m.deriv;
    r.eval = [ev, c](double s) { return ev(c * s); };
    r.deriv = [dv, c](int b, double s) { return std::pow(c, b) * dv(b, c * s); };
    if (m.support_bound) r.support_bound = *m.support_bound / c;
    if (m.has_kink) r.kink_pos = m.kink_pos / c;
    return r;
}

MultiplierSpec compensate(const MultiplierSpec& m) {
    cplx v0 = m.value_at_zero;
    if (v0 == 0.0) return m;
    MultiplierSpec r = m;
    r.name = m.name + "_comp";
    r.value_at_zero = 0.0;
    r.support_bound.reset();  // the e^{-s} tail extends past any bound
    auto ev = m.eval;
    auto dv = m.deriv;
    r.eval = [ev, v0](double s) { return ev(s) - v0 * std::exp(-s); };
    r.deriv = [dv, v0](int b, double s) {
        return dv(b, s) - v0 * ((b % 2) ? -1.0 : 1.0) * std::exp(-s);
    };
    r.is_real = m.is_real && v0.imag() == 0.0;
    return r;
}

namespace {

// signed Stirling numbers of the first kind, s(n+1,k) = s(n,k-1) - n s(n,k)
const std::vector<std::vector<double>>& stirling1() {
    static const std::vector<std::vector<double>> t = [] {
        std::vector<std::vector<double>> s(13, std::vector<double>(13, 0.0));
        s[0][0] = 1.0;
        for (int n = 0; n < 12; ++n)
            for (int k = 0; k <= n; ++k) {
                if (k + 1 <= 12) s[n + 1][k + 1] += s[n][k];
                s[n + 1][k] -= n * s[n][k];
            }
        return s;
    }();
    return t;
}

}  // namespace

MultiplierSpec from_function(const std::string& name, std::function<cplx(double)> f,
                             int max_order, std::optional<double> support_bound,
                             cplx value_at_zero) {
    MultiplierSpec m;
    m.name = name;
    m.max_order = std::min(max_order, 4);
    m.support_bound = support_bound;
    m.value_at_zero = value_at_zero;
    m.eval = f;
    // central differences in x = log s with one Richardson pass, then the
    // log-to-linear change of variables via Stirling numbers
    m.deriv = [f, value_at_zero](int b, double s) -> cplx {
        if (b == 0) return s == 0.0 ? value_at_zero : f(s);
        if (s == 0.0) return 0.0;
        const double h = 1e-4 * std::log(10.0);
        std::function<cplx(double, double, int)> dx = [&](double x, double step, int n) -> cplx {
            if (n == 0) return f(std::exp(x));
            return (dx(x + step, step, n - 1) - dx(x - step, step, n - 1)) / (2.0 * step);
        };
        double x = std::log(s);
        cplx acc = 0.0;
        const auto& s1 = stirling1();
        for (int g = 1; g <= b; ++g) {
            cplx coarse = dx(x, h, g);
            cplx fine = dx(x, 0.5 * h, g);
            acc += s1[b][g] * (4.0 * fine - coarse) / 3.0;
        }
        return acc * std::pow(s, -b);
    };
    m.is_real = false;
    return m;
}

std::string NormReport::to_json() const {
    auto num = [](double v) -> std::string {
        if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    };
    std::ostringstream os;
    os << "{";
    for (size_t b = 0; b < mh.size(); ++b) os << "\"mh_" << b << "\": " << num(mh[b]) << ", ";
    os << "\"mh_alpha_max\": " << num(mh_alpha) << ", ";
    os << "\"C_0\": " << num(c0) << ", \"C_1\": " << num(c1) << ", \"C_top\": " << num(c_top)
       << ", \"D_top\": " << num(d_top) << ", \"N\": " << num(n_value)
       << ", \"N_tilde\": " << num(n_tilde) << "}";
    return os.str();
}

NormReport mh_norm(const MultiplierSpec& m, int alpha, const SupGrid& grid) {
    if (m.max_order < alpha)
        throw std::invalid_argument("mh_norm: multiplier supplies derivatives only to order " +
                                    std::to_string(m.max_order));
    if (grid.hi <= grid.lo || grid.points_per_decade < 1)
        throw std::invalid_argument("mh_norm: empty grid");
    NormReport rep;
    rep.alpha = alpha;
    int n = (int)std::ceil(grid.points_per_decade * std::log10(grid.hi / grid.lo)) + 1;
    double dx = std::log(grid.hi / grid.lo) / (n - 1);
    rep.mh.assign(alpha + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        double lam = grid.lo * std::exp(i * dx);
        for (int b = 0; b <= alpha; ++b) {
            double v = std::pow(lam, b) * std::abs(m.deriv(b, lam));
            if (v > rep.mh[b]) rep.mh[b] = v;
        }
    }
    rep.mh_alpha = *std::max_element(rep.mh.begin(), rep.mh.end());
    std::ostringstream os;
    os << "sup grid [" << grid.lo << ", " << grid.hi << "] x" << grid.points_per_decade
       << "/decade";
    rep.grid_meta = os.str();
    return rep;
}

NormReport smoothness_norms(const MultiplierSpec& eta, int alpha, const QuadConfig& quad,
                            const SupGrid& grid) {
    if (eta.max_order < alpha + 2)
        throw std::invalid_argument("smoothness_norms: need derivatives to order " +
                                    std::to_string(alpha + 2));
    NormReport rep = mh_norm(eta, alpha, grid);

    // ||eta||_{C^{alpha+2}([0,1])} on a dense grid, one-sided at the endpoints
    const int nu = 4096;
    double sup01 = 0.0;
    for (int i = 0; i <= nu; ++i) {
        double s = (double)i / nu;
        for (int b = 0; b <= alpha + 2; ++b) sup01 = std::max(sup01, std::abs(eta.deriv(b, s)));
    }
    rep.c_unit_norm = sup01;

    auto c_integral = [&](int b, bool log_weight) -> ImproperResult {
        auto f = [&, b, log_weight](double s) {
            double w = log_weight ? std::pow(std::log(s), 2) : 1.0;
            return std::abs(eta.deriv(b, s)) * std::pow(s, b - 1) * w;
        };
        if (eta.support_bound) {
            ImproperResult r;
            if (*eta.support_bound <= 1.0) return r;
            r.value = integrate(f, 1.0, *eta.support_bound, quad.rel_tol, quad.max_depth);
            r.panels = 1;
            return r;
        }
        return integrate_to_infinity(f, 1.0, quad);
    };

    auto r0 = c_integral(0, false);
    auto r1 = c_integral(1, false);
    auto rt = c_integral(alpha + 2, false);
    auto rd = c_integral(alpha + 2, true);
    rep.c0 = r0.value;
    rep.c1 = r1.value;
    rep.c_top = rt.value;
    rep.d_top = rd.value;
    rep.divergent = r0.divergent || r1.divergent || rt.divergent || rd.divergent;
    double inf = std::numeric_limits<double>::infinity();
    double cmax = std::max({r0.divergent ? inf : rep.c0, r1.divergent ? inf : rep.c1,
                            rt.divergent ? inf : rep.c_top});
    rep.n_value = rep.c_unit_norm + cmax;
    rep.n_tilde = rep.n_value + (rd.divergent ? inf : rep.d_top);
    rep.grid_meta += "; tail panels " + std::to_string(std::max({r0.panels, r1.panels, rt.panels}));
    return rep;
}

}  // namespace mellincalc
