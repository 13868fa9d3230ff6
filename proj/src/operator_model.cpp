#include "mellincalc/operator_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace mellincalc {

double SpectralModel::gram_defect() const {
    double worst = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            double g = 0.0;
            for (int x = 0; x < npoints; ++x) g += weights[x] * basis[i][x] * basis[j][x];
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

nlohmann::ordered_json SpectralModel::to_json() const {
    nlohmann::ordered_json j;
    j["dim"] = dim;
    j["eigenvalues"] = eigenvalues;
    j["weights"] = weights;
    j["basis"] = basis;
    return j;
}

SpectralModel build_cycle_laplacian(int n) {
    if (n < 3) throw std::invalid_argument("build_cycle_laplacian: need n >= 3");
    SpectralModel m;
    m.npoints = n;
    m.dim = n - 1;
    m.name = "cycle:" + std::to_string(n);
    m.weights.assign(n, 1.0);
    // eigenvalue 2 - 2cos(2pi k/n) for the pair cos(2pi k x/n), sin(2pi k x/n);
    // ordering by k gives ascending eigenvalues
    for (int k = 1; k <= (n - 1) / 2; ++k) {
        double lam = 2.0 - 2.0 * std::cos(2.0 * M_PI * k / n);
        double nrm = std::sqrt(2.0 / n);
        std::vector<double> ec(n), es(n);
        for (int x = 0; x < n; ++x) {
            ec[x] = nrm * std::cos(2.0 * M_PI * k * x / n);
            es[x] = nrm * std::sin(2.0 * M_PI * k * x / n);
        }
        m.eigenvalues.push_back(lam);
        m.basis.push_back(std::move(ec));
        m.eigenvalues.push_back(lam);
        m.basis.push_back(std::move(es));
    }
    if (n % 2 == 0) {  // alternating vector at the top of the spectrum
        std::vector<double> ea(n);
        for (int x = 0; x < n; ++x) ea[x] = ((x % 2) ? -1.0 : 1.0) / std::sqrt((double)n);
        m.eigenvalues.push_back(4.0);
        m.basis.push_back(std::move(ea));
    }
    return m;
}

SpectralModel build_diagonal(const std::vector<double>& lambdas,
                             const std::vector<double>& weights) {
    if (lambdas.size() != weights.size() || lambdas.empty())
        throw std::invalid_argument("build_diagonal: lambda/weight lengths must match");
    SpectralModel m;
    m.npoints = (int)lambdas.size();
    m.dim = m.npoints;
    m.name = "diagonal:" + std::to_string(m.dim);
    m.weights = weights;
    m.eigenvalues = lambdas;
    for (int i = 0; i < m.dim; ++i) {
        if (lambdas[i] <= 0.0) throw std::invalid_argument("build_diagonal: eigenvalues must be > 0");
        if (weights[i] <= 0.0) throw std::invalid_argument("build_diagonal: weights must be > 0");
        std::vector<double> e(m.npoints, 0.0);
        e[i] = 1.0 / std::sqrt(weights[i]);
        m.basis.push_back(std::move(e));
    }
    return m;
}

std::vector<cplx> coefficients(const SpectralModel& m, const Signal& f) {
    if ((int)f.size() != m.npoints)
        throw std::invalid_argument("signal length does not match the model point set");
    std::vector<cplx> c(m.dim);
    for (int i = 0; i < m.dim; ++i) {
        cplx acc = 0.0;
        for (int x = 0; x < m.npoints; ++x) acc += m.weights[x] * f[x] * m.basis[i][x];
        c[i] = acc;
    }
    return c;
}

Signal from_coefficients(const SpectralModel& m, const std::vector<cplx>& c) {
    Signal f(m.npoints, 0.0);
    for (int i = 0; i < m.dim; ++i)
        for (int x = 0; x < m.npoints; ++x) f[x] += c[i] * m.basis[i][x];
    return f;
}

Signal spectral_apply(const SpectralModel& m, const std::function<cplx(double)>& symbol,
                      const Signal& f) {
    auto c = coefficients(m, f);
    for (int i = 0; i < m.dim; ++i) c[i] *= symbol(m.eigenvalues[i]);
    return from_coefficients(m, c);
}

Signal spectral_apply(const SpectralModel& m, const MultiplierSpec& spec, const Signal& f) {
    return spectral_apply(m, [&spec](double lam) { return spec.eval(lam); }, f);
}

Signal imaginary_power(const SpectralModel& m, double u, const Signal& f) {
    return spectral_apply(m, [u](double lam) -> cplx {
        double th = u * std::log(lam);
        return {std::cos(th), std::sin(th)};
    }, f);
}

double lp_norm(const SpectralModel& m, const Signal& f, double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp_norm: need 1 < p < inf");
    if ((int)f.size() != m.npoints)
        throw std::invalid_argument("signal length does not match the model point set");
    double acc = 0.0;
    for (int x = 0; x < m.npoints; ++x) acc += m.weights[x] * std::pow(std::abs(f[x]), p);
    return std::pow(acc, 1.0 / p);
}

Signal random_signal(const SpectralModel& m, std::uint64_t seed, std::uint64_t index) {
    // one generator per (seed, index) so ensembles are stable under extension
    std::mt19937_64 gen(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    auto unit = [&gen]() {
        return ((gen() >> 11) + 0.5) * (1.0 / 9007199254740992.0);  // (0,1)
    };
    Signal f(m.npoints);
    for (int x = 0; x < m.npoints; ++x) {
        double r = std::sqrt(-2.0 * std::log(unit()));
        double th = 2.0 * M_PI * unit();
        f[x] = cplx(r * std::cos(th), r * std::sin(th));
    }
    // keep signals inside the eigenspan so norms compare calculus output only
    return from_coefficients(m, coefficients(m, f));
}

double imaginary_power_norm_estimate(const SpectralModel& m, double u, double p, int n_samples,
                                     std::uint64_t seed) {
    double q = p / (p - 1.0);
    double best = 0.0;
    Signal best_f;
    for (int k = 0; k < n_samples; ++k) {
        Signal f = random_signal(m, seed, k);
        double nf = lp_norm(m, f, p);
        if (nf == 0.0) continue;
        double r = lp_norm(m, imaginary_power(m, u, f), p) / nf;
        if (r > best) {
            best = r;
            best_f = f;
        }
    }
    // dual refinement: g = L^{iu} f, next f' = L^{-iu} (|g|^{p-1} sign g)
    Signal f = best_f;
    for (int it = 0; it < 5 && !f.empty(); ++it) {
        Signal g = imaginary_power(m, u, f);
        Signal d(m.npoints);
        for (int x = 0; x < m.npoints; ++x) {
            double a = std::abs(g[x]);
            d[x] = a > 0 ? std::pow(a, p - 1.0) * (g[x] / a) : 0.0;
        }
        Signal fn = imaginary_power(m, -u, d);
        double nq = lp_norm(m, fn, q);
        if (nq == 0.0) break;
        // renormalize in p for the next ratio
        for (auto& v : fn) v /= nq;
        double nf = lp_norm(m, fn, p);
        if (nf == 0.0) break;
        double r = lp_norm(m, imaginary_power(m, u, fn), p) / nf;
        if (r > best) best = r;
        f = fn;
    }
    return best;
}

}  // namespace mellincalc
