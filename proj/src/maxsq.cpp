#include "mellincalc/maxsq.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mellincalc {

namespace {

// eigen-expansion once, then per-t symbol sweeps on the coefficients
struct Expanded {
    std::vector<cplx> coef;
    const SpectralModel* model;
};

Expanded expand(const SpectralModel& m, const Signal& f) {
    return {coefficients(m, f), &m};
}

std::vector<double> sup_over(const Expanded& e, const MultiplierSpec& phi,
                             const std::vector<double>& ts) {
    const auto& m = *e.model;
    std::vector<double> sup(m.npoints, 0.0);
    std::vector<cplx> sym(m.dim);
    for (double t : ts) {
        for (int i = 0; i < m.dim; ++i) sym[i] = phi.eval(t * m.eigenvalues[i]) * e.coef[i];
        for (int x = 0; x < m.npoints; ++x) {
            cplx v = 0.0;
            for (int i = 0; i < m.dim; ++i) v += sym[i] * m.basis[i][x];
            sup[x] = std::max(sup[x], std::abs(v));
        }
    }
    return sup;
}

std::vector<double> tgrid_nodes(const TGrid& tg) {
    std::vector<double> ts(tg.size());
    for (int i = 0; i < tg.size(); ++i) ts[i] = tg.node(i);
    return ts;
}

double rel_change(const std::vector<double>& a, const std::vector<double>& b) {
    double scale = 0.0, diff = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        scale = std::max(scale, std::abs(b[i]));
        diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    return scale > 0 ? diff / scale : 0.0;
}

}  // namespace

MaximalResult maximal_function(const SpectralModel& m, const MultiplierSpec& phi, const Signal& f,
                               const TGrid& tg) {
    auto e = expand(m, f);
    MaximalResult res;
    TGrid grid = tg;
    for (int attempt = 0;; ++attempt) {
        auto coarse = sup_over(e, phi, tgrid_nodes(grid));
        auto fine = sup_over(e, phi, tgrid_nodes(grid.refined()));
        res.refine_change = rel_change(coarse, fine);
        res.values.assign(fine.begin(), fine.end());
        res.stable = res.refine_change < 0.01;
        if (res.refine_change <= 0.05 || attempt == 1) break;
        grid = grid.widened();
        res.widened = true;
    }
    return res;
}

Signal maximal_discrete(const SpectralModel& m, const MultiplierSpec& phi, const Signal& f,
                        int k_min, int k_max) {
    if (k_max < k_min) throw std::invalid_argument("maximal_discrete: empty k range");
    auto e = expand(m, f);
    std::vector<double> ts;
    for (int k = k_min; k <= k_max; ++k) ts.push_back(std::exp2((double)-k));
    auto sup = sup_over(e, phi, ts);
    return Signal(sup.begin(), sup.end());
}

Signal square_function(const SpectralModel& m, const MultiplierSpec& psi, const Signal& f,
                       const TGrid& tg) {
    if (psi.value_at_zero != 0.0)
        throw std::invalid_argument(
            "square_function: psi(0) != 0 makes the dt/t integral diverge on small eigenvalues");
    auto e = expand(m, f);
    std::vector<double> acc(m.npoints, 0.0);
    std::vector<cplx> sym(m.dim);
    double w = tg.dlog();
    for (int it = 0; it < tg.size(); ++it) {
        double t = tg.node(it);
        // trapezoid in log t: half weight at the range ends
        double wt = (it == 0 || it == tg.size() - 1) ? 0.5 * w : w;
        for (int i = 0; i < m.dim; ++i) sym[i] = psi.eval(t * m.eigenvalues[i]) * e.coef[i];
        for (int x = 0; x < m.npoints; ++x) {
            cplx v = 0.0;
            for (int i = 0; i < m.dim; ++i) v += sym[i] * m.basis[i][x];
            acc[x] += std::norm(v) * wt;
        }
    }
    Signal out(m.npoints);
    for (int x = 0; x < m.npoints; ++x) out[x] = std::sqrt(acc[x]);
    return out;
}

Signal square_function_discrete(const SpectralModel& m, const MultiplierSpec& phi,
                                const Signal& f, int k_min, int k_max) {
    if (k_max < k_min) throw std::invalid_argument("square_function_discrete: empty k range");
    auto e = expand(m, f);
    std::vector<double> acc(m.npoints, 0.0);
    std::vector<cplx> sym(m.dim);
    for (int k = k_min; k <= k_max; ++k) {
        double t = std::exp2((double)-k);
        for (int i = 0; i < m.dim; ++i) sym[i] = phi.eval(t * m.eigenvalues[i]) * e.coef[i];
        for (int x = 0; x < m.npoints; ++x) {
            cplx v = 0.0;
            for (int i = 0; i < m.dim; ++i) v += sym[i] * m.basis[i][x];
            acc[x] += std::norm(v);
        }
    }
    Signal out(m.npoints);
    for (int x = 0; x < m.npoints; ++x) out[x] = std::sqrt(acc[x]);
    return out;
}

Signal square_function_mellin(const SpectralModel& m, const Signal& f, const MellinSamples& M) {
    // refuse windows that cut the |M|^2 du mass
    double tail = 0.0, total = 0.0;
    for (int i = 0; i < M.grid.size(); ++i) {
        double w = std::norm(M.val[i]);
        total += w;
        if (std::abs(M.grid.node(i)) >= 0.5 * M.grid.u_max) tail += w;
    }
    if (total > 0 && tail / total > 1e-4)
        throw std::invalid_argument(
            "square_function_mellin: |M(psi)|^2 tail beyond u_max/2 is " +
            std::to_string(tail / total) + " of the mass; enlarge the u window");
    auto c = coefficients(m, f);
    int nu = M.grid.size();
    std::vector<double> acc(m.npoints, 0.0);
    std::vector<double> loglam(m.dim);
    for (int i = 0; i < m.dim; ++i) loglam[i] = std::log(m.eigenvalues[i]);
    std::vector<cplx> zi(m.dim);
    for (int iu = 0; iu < nu; ++iu) {
        double u = M.grid.node(iu);
        double w = std::norm(M.val[iu]) * M.grid.du;
        if (w == 0.0) continue;
        for (int i = 0; i < m.dim; ++i) {
            double th = u * loglam[i];
            zi[i] = c[i] * cplx(std::cos(th), std::sin(th));
        }
        for (int x = 0; x < m.npoints; ++x) {
            cplx v = 0.0;
            for (int i = 0; i < m.dim; ++i) v += zi[i] * m.basis[i][x];
            acc[x] += w * std::norm(v);
        }
    }
    Signal out(m.npoints);
    for (int x = 0; x < m.npoints; ++x) out[x] = std::sqrt(acc[x] / (2.0 * M_PI));
    return out;
}

CowlingResult cowling_reconstruct(const SpectralModel& m, const MultiplierSpec& phi,
                                  const Signal& f, double t, const MellinSamples& A) {
    CowlingResult res;
    cplx phi0 = phi.value_at_zero;
    res.lhs = spectral_apply(
        m, [&](double lam) { return phi.eval(t * lam) - phi0 * std::exp(-t * lam); }, f);

    // per eigenvalue: S_i = (2pi)^{-1} sum_u A(u) (t lambda_i)^{iu} du
    auto c = coefficients(m, f);
    int nu = A.grid.size();
    for (int i = 0; i < m.dim; ++i) {
        double y = std::log(t * m.eigenvalues[i]);
        cplx acc = 0.0, comp = 0.0;
        for (int iu = 0; iu < nu; ++iu) {
            double th = A.grid.node(iu) * y;
            cplx term = A.val[iu] * cplx(std::cos(th), std::sin(th));
            cplx q = term - comp;
            cplx s = acc + q;
            comp = (s - acc) - q;
            acc = s;
        }
        c[i] *= acc * A.grid.du / (2.0 * M_PI);
    }
    res.rhs = from_coefficients(m, c);

    for (const auto& v : res.lhs) res.lhs_scale = std::max(res.lhs_scale, std::abs(v));
    double worst = 0.0;
    for (size_t x = 0; x < res.lhs.size(); ++x)
        worst = std::max(worst, std::abs(res.rhs[x] - res.lhs[x]));
    res.max_rel_residual = res.lhs_scale > 0 ? worst / res.lhs_scale : worst;
    return res;
}

RatioExperiment bound_ratio_experiment(const SpectralModel& m, const MultiplierSpec& spec,
                                       const RatioConfig& cfg) {
    if (cfg.n_signals < 1) throw std::invalid_argument("bound_ratio_experiment: empty ensemble");
    RatioExperiment ex;
    auto& rep = ex.report;
    rep.seed = cfg.seed;
    rep.tolerance = 0.10;

    int excluded = 0;
    auto ratio_for = [&](std::uint64_t idx) -> double {
        Signal f = random_signal(m, cfg.seed, idx);
        double nf = lp_norm(m, f, cfg.p);
        if (nf == 0.0) return 0.0;
        switch (cfg.kind) {
            case RatioKind::Max: {
                auto mr = maximal_function(m, spec, f, cfg.tgrid);
                return lp_norm(m, mr.values, cfg.p) / nf / cfg.norm_divisor;
            }
            case RatioKind::Square:
                return lp_norm(m, square_function(m, spec, f, cfg.tgrid), cfg.p) / nf;
            case RatioKind::SquareLower: {
                double ns = lp_norm(m, square_function(m, spec, f, cfg.tgrid), cfg.p);
                if (ns < 1e-12 * nf) {  // psi vanishes on the whole spectrum
                    ++excluded;
                    return 0.0;
                }
                return nf / ns;
            }
        }
        return 0.0;
    };

    double stat = 0.0;
    for (int k = 0; k < cfg.n_signals; ++k) {
        double r = ratio_for(k);
        ex.per_signal.push_back(r);
        stat = std::max(stat, r);
    }
    double stat2 = stat;
    for (int k = cfg.n_signals; k < 2 * cfg.n_signals; ++k) stat2 = std::max(stat2, ratio_for(k));
    double stability = stat > 0 ? (stat2 - stat) / stat : 0.0;

    const char* kind_name = cfg.kind == RatioKind::Max
                                ? "max"
                                : (cfg.kind == RatioKind::Square ? "square" : "square_lower");
    rep.check_name = std::string("bound_ratio_") + kind_name;
    std::ostringstream os;
    os << "kind=" << kind_name << ";p=" << cfg.p << ";multiplier=" << spec.name
       << ";model=" << m.name << ";n=" << cfg.n_signals;
    rep.inputs = os.str();
    rep.stat("statistic", stat);
    rep.stat("stability", stability);
    rep.stat("norm_divisor", cfg.norm_divisor);
    rep.stat("excluded", excluded);
    rep.grid_meta = cfg.tgrid.describe();
    rep.pass = std::isfinite(stat) && stability < rep.tolerance;
    return ex;
}

}  // namespace mellincalc
