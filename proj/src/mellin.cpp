#include "mellincalc/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mellincalc {

namespace {

// ---- double-double phase reduction ------------------------------------------
// theta = -(u * x) mod 2pi computed so the reduced angle keeps full double
// accuracy even when u*x is ~1e5 rad.  Plain rounding of the product injects
// a quasi-periodic ~|u x| eps phase error across the lattice, which shows up
// as narrow spectral lines far above the quadrature floor.
constexpr double kTwoPiHi = 6.283185307179586476925286766559;  // nearest double
constexpr double kTwoPiLo = 2.4492935982947063545e-16;         // 2pi - kTwoPiHi

inline double phase_reduced(double u, double x) {
    double hi = u * x;
    double lo = std::fma(u, x, -hi);
    double n = std::nearbyint(hi / kTwoPiHi);
    double p1 = n * kTwoPiHi;
    double p1e = std::fma(n, kTwoPiHi, -p1);
    double d = hi - p1;  // exact by Sterbenz: hi and p1 agree to within ~pi
    return -(d + (lo - p1e - n * kTwoPiLo));
}

inline std::complex<double> unit_phase(double u, double x) {
    double th = phase_reduced(u, x);
    return {std::cos(th), std::sin(th)};
}

// ---- compensated accumulation -------------------------------------------------
struct Kahan {
    double s = 0.0, c = 0.0;
    inline void add(double v) {
        double y = v - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

struct CKahan {
    Kahan re, im;
    inline void add(std::complex<double> v) {
        re.add(v.real());
        im.add(v.imag());
    }
    std::complex<double> value() const { return {re.s, im.s}; }
};

constexpr int kResync = 64;  // rotation drift stays at ~64 eps between anchors
constexpr int kLanes = 4;    // independent rotation chains hide multiply latency

// sum_j c_j e^{-iu (x0 + j dx)} with per-block Kahan and exact phase anchors;
// complex arithmetic spelled out in doubles, four interleaved rotation lanes
template <int NACC>
void lattice_sum(const cplx* const c[NACC], int n, double x0, double dx, double u,
                 cplx out[NACC]) {
    CKahan acc[NACC];
    cplx w4 = unit_phase(u, kLanes * dx);
    const double w4r = w4.real(), w4i = w4.imag();
    int j = 0;
    while (j + kResync <= n) {
        double rr[kLanes], ri[kLanes];
        for (int l = 0; l < kLanes; ++l) {
            cplx r = unit_phase(u, x0 + (j + l) * dx);
            rr[l] = r.real();
            ri[l] = r.imag();
        }
        double bre[NACC][kLanes] = {}, bim[NACC][kLanes] = {};
        for (int s = 0; s < kResync; s += kLanes) {
            for (int l = 0; l < kLanes; ++l) {
                int idx = j + s + l;
                for (int a = 0; a < NACC; ++a) {
                    double cr = c[a][idx].real(), ci = c[a][idx].imag();
                    bre[a][l] += cr * rr[l] - ci * ri[l];
                    bim[a][l] += cr * ri[l] + ci * rr[l];
                }
            }
            for (int l = 0; l < kLanes; ++l) {
                double nr = rr[l] * w4r - ri[l] * w4i;
                ri[l] = rr[l] * w4i + ri[l] * w4r;
                rr[l] = nr;
            }
        }
        for (int a = 0; a < NACC; ++a)
            acc[a].add({bre[a][0] + bre[a][1] + bre[a][2] + bre[a][3],
                        bim[a][0] + bim[a][1] + bim[a][2] + bim[a][3]});
        j += kResync;
    }
    if (j < n) {  // serial tail, fresh anchor
        cplx w = unit_phase(u, dx);
        const double wr = w.real(), wi = w.imag();
        cplx r0 = unit_phase(u, x0 + j * dx);
        double rr = r0.real(), ri = r0.imag();
        double bre[NACC] = {}, bim[NACC] = {};
        for (; j < n; ++j) {
            for (int a = 0; a < NACC; ++a) {
                double cr = c[a][j].real(), ci = c[a][j].imag();
                bre[a] += cr * rr - ci * ri;
                bim[a] += cr * ri + ci * rr;
            }
            double nr = rr * wr - ri * wi;
            ri = rr * wi + ri * wr;
            rr = nr;
        }
        for (int a = 0; a < NACC; ++a) acc[a].add({bre[a], bim[a]});
    }
    for (int a = 0; a < NACC; ++a) out[a] = acc[a].value();
}

// analytic head: lattice continuation of the Taylor part of m below x_min.
// For integrand s^k the missing sub-grid lattice mass is
//   sum_{m>=1} dx e^{(k-iu)(x_min - m dx)} = dx E q/(1-q),
// E = e^{(k-iu) x_min}, q = e^{-(k-iu) dx}; log-weighted variants are its
// u-derivatives.
void head_eval(int k, double u, double x_min, double dx, cplx out[3]) {
    double kk = (double)k;
    cplx q = std::exp(-kk * dx) * unit_phase(-u, dx);
    cplx E = std::exp(kk * x_min) * unit_phase(u, x_min);
    cplx om = 1.0 - q;
    cplx F = q / om;
    cplx G = q / (om * om);
    cplx H = q * (1.0 + q) / (om * om * om);
    out[0] = dx * E * F;
    out[1] = cplx(0, -1) * dx * E * (x_min * F - dx * G);
    out[2] = -dx * E * (x_min * x_min * F - 2.0 * x_min * dx * G + dx * dx * H);
}

struct Prepared {
    std::vector<cplx> c, cx, cxx;  // samples, x- and x^2-weighted
    double x0 = 0.0, dx = 0.0;
    std::vector<cplx> taylor;  // m^{(k)}(0)/k!, k = 1..K
    bool all_real = true;
    double tail_mag = 0.0;  // |m| ds/s mass in the top decade
};

Prepared prepare(const MultiplierSpec& m, const LogGrid& sgrid, int head_terms_n,
                 bool need_weights) {
    Prepared p;
    int n = sgrid.size();
    p.dx = sgrid.dx();
    std::vector<cplx> vals(n);
    int lo = n, hi = -1;
    for (int i = 0; i < n; ++i) {
        vals[i] = m.eval(sgrid.node(i));
        if (vals[i] != 0.0) {
            lo = std::min(lo, i);
            hi = std::max(hi, i);
        }
    }
    p.x0 = sgrid.x_min();
    if (hi >= 0) {
        p.x0 = sgrid.x_node(lo);
        p.c.assign(vals.begin() + lo, vals.begin() + hi + 1);
        if (need_weights) {
            p.cx.resize(p.c.size());
            p.cxx.resize(p.c.size());
        }
        for (size_t j = 0; j < p.c.size(); ++j) {
            double x = p.x0 + j * p.dx;
            if (need_weights) {
                p.cx[j] = p.c[j] * x;
                p.cxx[j] = p.c[j] * (x * x);
            }
            if (p.c[j].imag() != 0.0) p.all_real = false;
        }
    }
    int kmax = std::min(head_terms_n, m.max_order);
    double fact = 1.0;
    for (int k = 1; k <= kmax; ++k) {
        fact *= k;
        cplx tk = m.deriv(k, 0.0) / fact;
        p.taylor.push_back(tk);
        if (tk.imag() != 0.0) p.all_real = false;
    }
    int dec = sgrid.points_per_decade;
    for (int i = std::max(0, n - dec); i < n; ++i) p.tail_mag += std::abs(vals[i]) * p.dx;
    return p;
}

template <int NACC>
void run_transform(const Prepared& p, const UGrid& ugrid, double x_min, std::vector<cplx>* out0,
                   std::vector<cplx>* out1, std::vector<cplx>* out2) {
    int sz = ugrid.size();
    int zero = ugrid.index_of_zero();
    out0->assign(sz, 0.0);
    if (out1) out1->assign(sz, 0.0);
    if (out2) out2->assign(sz, 0.0);
    int n = (int)p.c.size();
    const cplx* chan[3] = {p.c.data(), p.cx.data(), p.cxx.data()};
    double x_last = p.x0 + (n - 1) * p.dx;
    auto eval_at = [&](double u, cplx res[3]) {
        cplx lat[NACC] = {};
        if (n > 0) {
            lattice_sum<NACC>(chan, n, p.x0, p.dx, u, lat);
            // trapezoid half-weight where the tail is genuinely truncated;
            // no effect when the integrand has decayed to zero there
            cplx edge = 0.5 * unit_phase(u, x_last);
            for (int a = 0; a < NACC; ++a) lat[a] -= chan[a][n - 1] * edge;
        }
        res[0] = lat[0] * p.dx;
        if constexpr (NACC > 1) res[1] = lat[1] * p.dx * cplx(0, -1);
        if constexpr (NACC > 2) res[2] = lat[2] * p.dx * (-1.0);
        for (size_t k = 0; k < p.taylor.size(); ++k) {
            cplx h[3];
            head_eval((int)k + 1, u, x_min, p.dx, h);
            for (int a = 0; a < NACC; ++a) res[a] += p.taylor[k] * h[a];
        }
    };
    int start = p.all_real ? zero : 0;
    for (int i = start; i < sz; ++i) {
        cplx res[3] = {0.0, 0.0, 0.0};
        eval_at(ugrid.node(i), res);
        (*out0)[i] = res[0];
        if (out1) (*out1)[i] = res[1];
        if (out2) (*out2)[i] = res[2];
    }
    if (p.all_real) {  // real source: M(-u) = conj M(u)
        for (int i = 0; i < zero; ++i) {
            int j = 2 * zero - i;
            (*out0)[i] = std::conj((*out0)[j]);
            if (out1) (*out1)[i] = -std::conj((*out1)[j]);
            if (out2) (*out2)[i] = std::conj((*out2)[j]);
        }
    }
}

}  // namespace

MellinSamples mellin_transform(const MultiplierSpec& m, const LogGrid& sgrid, const UGrid& ugrid,
                               const MellinOptions& opt) {
    if (m.value_at_zero != 0.0)
        throw std::invalid_argument(
            "mellin_transform: m(0) != 0 makes ds/s non-integrable at 0; transform the "
            "compensated multiplier instead");
    double halfband = M_PI / sgrid.dx();
    if (halfband < ugrid.u_max) {
        int need = (int)std::ceil(ugrid.u_max * std::log(10.0) / M_PI);
        throw std::invalid_argument(
            "mellin_transform: s-grid too coarse for u_max (lattice folds at pi/dx = " +
            std::to_string(halfband) + "); need >= " + std::to_string(need) +
            " points per decade");
    }
    MellinSamples out;
    out.grid = ugrid;
    out.source = m.name;
    out.nyquist_halfband = halfband;
    Prepared p = prepare(m, sgrid, opt.head_terms, opt.derivatives);
    out.tail_warning = p.tail_mag > 1e-8;
    if (opt.derivatives)
        run_transform<3>(p, ugrid, sgrid.x_min(), &out.val, &out.du, &out.d2u);
    else
        run_transform<1>(p, ugrid, sgrid.x_min(), &out.val, nullptr, nullptr);
    out.grid_meta = sgrid.describe() + "; " + ugrid.describe();
    return out;
}

namespace {

// mass of |v| du in [u_max/2, u_max] relative to the whole grid; used to
// detect windows truncated before the transform has decayed
double tail_fraction(const std::vector<cplx>& v, const UGrid& g, double power) {
    double tail = 0.0, total = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        double m = std::pow(std::abs(v[i]), power);
        total += m;
        if (std::abs(g.node(i)) >= 0.5 * g.u_max) tail += m;
    }
    return total > 0 ? tail / total : 0.0;
}

[[noreturn]] void tail_error(const char* who, double frac, double tol, const UGrid& g) {
    // crude requirement estimate from one observed octave of decay
    double needed = g.u_max;
    if (frac > 0 && frac < 1) {
        double halvings = std::log2(frac / tol) / 2.0 + 1.0;
        needed = g.u_max * std::pow(2.0, std::max(1.0, halvings));
    }
    std::ostringstream os;
    os << who << ": u-window truncates before the samples decay (top-octave fraction " << frac
       << " > " << tol << "); estimated required u_max ~ " << needed;
    throw std::invalid_argument(os.str());
}

}  // namespace

std::vector<cplx> mellin_inverse(const MellinSamples& M, const LogGrid& sgrid) {
    // m(s) = (2pi)^{-1} sum_u M(u) e^{iu log s} du over the whole grid; the
    // imaginary part that survives is the truncation/asymmetry residual.
    double frac = tail_fraction(M.val, M.grid, 1.0);
    if (frac > 1e-4) tail_error("mellin_inverse", frac, 1e-4, M.grid);
    int n = sgrid.size();
    std::vector<cplx> out(n);
    double du = M.grid.du;
    double u0 = -M.grid.u_max;
    const cplx* chan[1] = {M.val.data()};
    for (int i = 0; i < n; ++i) {
        double y = sgrid.x_node(i);
        cplx acc[1];
        // e^{+iu y} = e^{-iu(-y)}: reuse the lattice kernel with x = u, u = -y
        lattice_sum<1>(chan, M.grid.size(), u0, du, -y, acc);
        out[i] = acc[0] * du / (2.0 * M_PI);
    }
    return out;
}

PlancherelResult plancherel_residual(const MultiplierSpec& m, const LogGrid& sgrid,
                                     const UGrid& ugrid) {
    PlancherelResult r;
    // lhs on the same lattice; the sub-s_min Taylor mass of |m|^2 is O(s_min^2)
    double dx = sgrid.dx();
    Kahan lhs;
    for (int i = 0; i < sgrid.size(); ++i) lhs.add(std::norm(m.eval(sgrid.node(i))) * dx);
    r.lhs = lhs.s;
    MellinSamples M = mellin_transform(m, sgrid, ugrid);
    Kahan rhs;
    for (int i = 0; i < M.grid.size(); ++i) rhs.add(std::norm(M.val[i]) * ugrid.du);
    r.rhs = rhs.s / (2.0 * M_PI);
    r.residual = std::abs(r.lhs - r.rhs) / std::max(r.lhs, 1e-300);
    r.grid_meta = M.grid_meta;
    return r;
}

MellinSamples a_phi(const MultiplierSpec& phi, const LogGrid& sgrid, const UGrid& ugrid) {
    MultiplierSpec g = compensate(phi);
    MellinSamples out = mellin_transform(g, sgrid, ugrid);
    out.source = "A[" + phi.name + "]";
    return out;
}

DecayReport decay_report_on(const std::vector<cplx>& values, const UGrid& grid, int order,
                            double norm_bound, double fit_lo, double fit_hi) {
    DecayReport rep;
    rep.order = order;
    fit_hi = std::min(fit_hi, grid.u_max);
    rep.fit_lo = fit_lo;
    rep.fit_hi = fit_hi;
    int sz = grid.size();
    for (int i = 0; i < sz; ++i) {
        double u = grid.node(i);
        double g = std::abs(values[i]) * std::pow(1.0 + std::abs(u), order);
        if (g > rep.sup_g) {
            rep.sup_g = g;
            rep.sup_at = u;
        }
    }
    if (rep.sup_g == 0.0) {  // identically zero samples decay trivially
        rep.slope = -std::numeric_limits<double>::infinity();
        rep.pass = true;
        return rep;
    }
    if (fit_hi / fit_lo < 100.0 - 1e-9)
        throw std::invalid_argument("decay_report: need at least two decades above u = " +
                                    std::to_string(fit_lo));
    // envelope fit: per-bin maxima of |values|, 8 bins per decade
    const double bpd = 8.0;
    int nbins = (int)std::ceil(bpd * std::log10(fit_hi / fit_lo));
    std::vector<double> mx(nbins, 0.0);
    for (int i = grid.index_of_zero(); i < sz; ++i) {
        double u = grid.node(i);
        if (u < fit_lo || u > fit_hi) continue;
        int b = std::min(nbins - 1, (int)(bpd * std::log10(u / fit_lo)));
        mx[b] = std::max(mx[b], std::abs(values[i]));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int b = 0; b < nbins; ++b) {
        if (mx[b] <= 0.0) continue;
        double xb = std::log10(fit_lo) + (b + 0.5) / bpd;
        double yb = std::log10(mx[b]);
        sx += xb;
        sy += yb;
        sxx += xb * xb;
        sxy += xb * yb;
        ++cnt;
    }
    if (cnt < 4) {
        // identically zero samples decay trivially
        rep.slope = -std::numeric_limits<double>::infinity();
        rep.k_const = 0.0;
        rep.pass = true;
        return rep;
    }
    rep.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    rep.k_const = norm_bound > 0 ? rep.sup_g / norm_bound : 0.0;
    rep.pass = std::isfinite(rep.k_const) && rep.slope <= -(double)order + 0.25;
    return rep;
}

DecayReport decay_report(const MellinSamples& samples, int order, double norm_bound,
                         double fit_lo, double fit_hi) {
    return decay_report_on(samples.val, samples.grid, order, norm_bound, fit_lo, fit_hi);
}

}  // namespace mellincalc
