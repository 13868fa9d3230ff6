#include "mellincalc/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mellincalc {

double PartitionSpec::h(double u) const { return dh(0, u); }

double PartitionSpec::dh(int order, double u) const {
    // rising half on [-pi, 0], falling half on [0, pi]; the two halves reuse
    // the same transition values so adjacent shifts sum to exactly 1
    if (u <= -M_PI || u >= M_PI) return 0.0;
    if (u <= 0.0) {
        double t = (u + M_PI) / M_PI;
        double v = order == 0 ? smooth_transition(t) : smooth_transition_deriv(order, t);
        return v / std::pow(M_PI, order);
    }
    double t = u / M_PI;
    if (order == 0) return 1.0 - smooth_transition(t);
    return -smooth_transition_deriv(order, t) / std::pow(M_PI, order);
}

PartitionSpec build_partition() { return PartitionSpec{}; }

namespace {

struct BlockNodes {
    int i_lo = 0;            // first u-grid index with h_k != 0
    std::vector<cplx> w;     // h_k(u) M(u) du
    std::vector<double> u;   // the u nodes
};

BlockNodes block_nodes(const MellinSamples& M, const PartitionSpec& part, int k) {
    double lo = part.shift * k - part.shift;
    double hi = part.shift * k + part.shift;
    if (lo < -M.grid.u_max - 1e-12 || hi > M.grid.u_max + 1e-12)
        throw std::invalid_argument("block k=" + std::to_string(k) +
                                    " extends beyond the sampled u range");
    BlockNodes b;
    int n = M.grid.size();
    int i0 = std::max(0, (int)std::ceil((lo + M.grid.u_max) / M.grid.du));
    b.i_lo = i0;
    for (int i = i0; i < n; ++i) {
        double u = M.grid.node(i);
        if (u >= hi) break;
        double hk = part.h_k(k, u);
        if (u > lo && hk != 0.0) {
            b.w.push_back(hk * M.val[i] * M.grid.du);
            b.u.push_back(u);
        }
    }
    return b;
}

cplx osc_sum(const BlockNodes& b, int beta, double z) {
    // sum_i w_i u_i^beta e^{i z u_i}
    cplx acc = 0.0, comp = 0.0;
    for (size_t i = 0; i < b.w.size(); ++i) {
        double th = z * b.u[i];
        cplx term = b.w[i] * std::pow(b.u[i], beta) * cplx(std::cos(th), std::sin(th));
        cplx q = term - comp;
        cplx s = acc + q;
        comp = (s - acc) - q;
        acc = s;
    }
    return acc;
}

cplx ipow(int beta) {
    switch (beta & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

std::vector<cplx> b_jk(const MellinSamples& M, const PartitionSpec& part, int j, int k,
                       const std::vector<double>& lambdas) {
    auto nodes = block_nodes(M, part, k);
    std::vector<cplx> out(lambdas.size());
    for (size_t i = 0; i < lambdas.size(); ++i)
        out[i] = osc_sum(nodes, 0, std::log(lambdas[i]) - j);
    return out;
}

cplx cjk_derivative(const MellinSamples& M, const PartitionSpec& part, int j, int k, int beta,
                    double y, int alpha) {
    if (beta < 0) throw std::invalid_argument("cjk_derivative: beta must be >= 0");
    if (alpha >= 0 && beta > alpha)
        throw std::invalid_argument("cjk_derivative: beta exceeds the calculus order alpha");
    auto nodes = block_nodes(M, part, k);
    return ipow(beta) * osc_sum(nodes, beta, y - j);
}

BlockTable build_block_table(const MellinSamples& M, const PartitionSpec& part, int k, int alpha,
                             double z_max, double dz) {
    BlockTable t;
    t.k = k;
    t.dz = dz;
    t.z0 = -z_max;
    int nz = 2 * (int)std::lround(z_max / dz) + 1;
    t.f.assign(alpha + 1, std::vector<cplx>(nz, 0.0));
    auto nodes = block_nodes(M, part, k);
    for (size_t i = 0; i < nodes.w.size(); ++i) {
        double u = nodes.u[i];
        cplx w0 = nodes.w[i];
        cplx rot = std::exp(cplx(0.0, t.z0 * u));
        cplx step = std::exp(cplx(0.0, dz * u));
        std::vector<cplx> wb(alpha + 1);
        for (int b = 0; b <= alpha; ++b) wb[b] = w0 * std::pow(u, b);
        for (int iz = 0; iz < nz; ++iz) {
            if (iz % 512 == 0) rot = std::exp(cplx(0.0, (t.z0 + iz * dz) * u));
            for (int b = 0; b <= alpha; ++b) t.f[b][iz] += wb[b] * rot;
            rot *= step;
        }
    }
    for (int b = 0; b <= alpha; ++b) {
        cplx ib = ipow(b);
        for (auto& v : t.f[b]) v *= ib;
    }
    return t;
}

VerificationReport cjk_bounds_report(const MellinSamples& M, const PartitionSpec& part, int alpha,
                                     int k_min, int k_max, const MellinSamples* M_fine) {
    VerificationReport rep;
    rep.check_name = "cjk_bounds";
    std::ostringstream os;
    os << "alpha=" << alpha << ";k=[" << k_min << "," << k_max << "];source=" << M.source;
    rep.inputs = os.str();
    rep.grid_meta = M.grid_meta;
    rep.tolerance = 10.0;  // admissible jump between adjacent normalized constants

    auto norm_consts = [&](const MellinSamples& samples, std::vector<double>& size_c,
                           std::vector<double>& tail_c) {
        for (int k = k_min; k <= k_max; ++k) {
            auto tab = build_block_table(samples, part, k, alpha, 24.0, 1.0 / 32);
            double sup = 0.0, tail = 0.0;
            for (int b = 0; b <= alpha; ++b)
                for (int iz = 0; iz < tab.zsize(); ++iz) {
                    double z = tab.z0 + iz * tab.dz;
                    double v = std::abs(tab.f[b][iz]);
                    sup = std::max(sup, v);
                    if (std::abs(z) > 1.0) tail = std::max(tail, v * z * z);
                }
            double w = 1.0 + (double)k * k;
            size_c.push_back(sup * w);
            tail_c.push_back(tail * w);
        }
    };
    std::vector<double> size_c, tail_c;
    norm_consts(M, size_c, tail_c);

    double worst_adj = 1.0;
    for (size_t i = 1; i < size_c.size(); ++i) {
        double a = size_c[i - 1], b = size_c[i];
        if (a > 0 && b > 0) worst_adj = std::max(worst_adj, std::max(a / b, b / a));
    }
    double size_max = size_c.empty() ? 0.0 : *std::max_element(size_c.begin(), size_c.end());
    double tail_max = tail_c.empty() ? 0.0 : *std::max_element(tail_c.begin(), tail_c.end());
    rep.stat("size_const", size_max);
    rep.stat("tail_const", tail_max);
    rep.stat("adjacent_ratio_max", worst_adj);
    bool stable = true;
    if (M_fine) {
        std::vector<double> size_f, tail_f;
        norm_consts(*M_fine, size_f, tail_f);
        double drift = 0.0;
        for (size_t i = 0; i < size_c.size(); ++i)
            if (size_f[i] > 0)
                drift = std::max(drift, std::abs(size_c[i] - size_f[i]) / size_f[i]);
        rep.stat("resolution_drift", drift);
        stable = drift < 0.05;
    }
    rep.pass = std::isfinite(size_max) && std::isfinite(tail_max) && worst_adj < rep.tolerance &&
               stable;
    return rep;
}

VerificationReport parseval_block_check(const MellinSamples& M, const PartitionSpec& part, int k,
                                        double lambda, int j_half) {
    VerificationReport rep;
    rep.check_name = "parseval_block";
    std::ostringstream os;
    os << "k=" << k << ";lambda=" << lambda << ";j_half=" << j_half << ";source=" << M.source;
    rep.inputs = os.str();
    rep.grid_meta = M.grid_meta;
    rep.tolerance = 1e-4;

    auto nodes = block_nodes(M, part, k);
    double y = std::log(lambda);
    double lhs = 0.0;
    for (size_t i = 0; i < nodes.w.size(); ++i) {
        // w already carries h_k M du; reconstruct the integrand modulus
        double th = y * nodes.u[i];
        cplx g = nodes.w[i] * cplx(std::cos(th), std::sin(th));
        lhs += std::norm(g) / M.grid.du;
    }
    double sum_b = 0.0;
    double edge = 0.0;
    for (int j = -j_half; j <= j_half; ++j) {
        cplx b = osc_sum(nodes, 0, y - j);
        sum_b += std::norm(b);
        if (std::abs(j) == j_half) edge += std::norm(b);
    }
    double denom = std::max(lhs, 1e-300);
    double res_inv = std::abs(lhs - sum_b / (2.0 * M_PI)) / denom;
    double res_half = std::abs(lhs - sum_b / std::sqrt(2.0 * M_PI)) / denom;
    double tail_est = edge * j_half / (2.0 * M_PI) / denom;
    rep.stat("lhs", lhs);
    rep.stat("residual_two_pi", res_inv);
    rep.stat("residual_sqrt_two_pi", res_half);
    rep.stat("tail_estimate", tail_est);
    rep.pass = res_inv < rep.tolerance && tail_est < rep.tolerance;
    return rep;
}

BlockMultiplier block_multiplier(const MellinSamples& M, const PartitionSpec& part, int k,
                                 const std::vector<double>& a, int j_min,
                                 const std::vector<double>& lambdas, int alpha) {
    auto nodes = block_nodes(M, part, k);
    // fold the sign sequence into the block weights: S_a(u) = sum_j a_j e^{-iju}
    std::vector<cplx> sa(nodes.u.size(), 0.0);
    for (size_t i = 0; i < nodes.u.size(); ++i) {
        double u = nodes.u[i];
        cplx acc = 0.0;
        for (size_t j = 0; j < a.size(); ++j) {
            if (a[j] == 0.0) continue;
            double th = -u * (double)(j_min + (int)j);
            acc += a[j] * cplx(std::cos(th), std::sin(th));
        }
        sa[i] = acc;
    }
    BlockNodes folded = nodes;
    for (size_t i = 0; i < folded.w.size(); ++i) folded.w[i] *= sa[i];

    BlockMultiplier out;
    out.lambdas = lambdas;
    out.values.resize(lambdas.size());
    out.y_derivs.assign(alpha + 1, std::vector<cplx>(lambdas.size()));
    for (size_t i = 0; i < lambdas.size(); ++i) {
        double y = std::log(lambdas[i]);
        for (int b = 0; b <= alpha; ++b) out.y_derivs[b][i] = ipow(b) * osc_sum(folded, b, y);
        out.values[i] = out.y_derivs[0][i];
    }
    return out;
}

double spearman_rho(const std::vector<double>& a, const std::vector<double>& b) {
    auto ranks = [](const std::vector<double>& v) {
        int n = (int)v.size();
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int i, int j) { return v[i] < v[j]; });
        std::vector<double> r(n);
        int i = 0;
        while (i < n) {
            int j = i;
            while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
            double avg = 0.5 * (i + j) + 1.0;
            for (int t = i; t <= j; ++t) r[idx[t]] = avg;
            i = j + 1;
        }
        return r;
    };
    auto ra = ranks(a), rb = ranks(b);
    int n = (int)a.size();
    double ma = 0, mb = 0;
    for (int i = 0; i < n; ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= n;
    mb /= n;
    double num = 0, da = 0, db = 0;
    for (int i = 0; i < n; ++i) {
        num += (ra[i] - ma) * (rb[i] - mb);
        da += (ra[i] - ma) * (ra[i] - ma);
        db += (rb[i] - mb) * (rb[i] - mb);
    }
    double den = std::sqrt(da * db);
    return den > 0 ? num / den : 0.0;
}

ClaimResult claim_decay_check(const MellinSamples& M, const PartitionSpec& part, int alpha,
                              int k_half, int n_rademacher, std::uint64_t seed) {
    if (n_rademacher < 32)
        throw std::invalid_argument("claim_decay_check: need at least 32 sign draws");
    ClaimResult out;
    auto& rep = out.report;
    rep.check_name = "claim_decay";
    rep.seed = seed;
    rep.tolerance = 0.10;
    std::ostringstream os;
    os << "alpha=" << alpha << ";k_half=" << k_half << ";draws=" << n_rademacher
       << ";source=" << M.source;
    rep.inputs = os.str();
    rep.grid_meta = M.grid_meta;

    const int j_half = 64;
    const double y_max = 20.0;
    const double dz = 1.0 / 64;
    const int per_unit = 64;
    const int ny = 2 * (int)std::lround(y_max * per_unit) + 1;

    // sign draws: one stream, extended for the stability comparison
    std::mt19937_64 gen(seed);
    int total_draws = 2 * n_rademacher;
    std::vector<std::vector<double>> draws(total_draws, std::vector<double>(2 * j_half + 1));
    for (auto& d : draws)
        for (auto& v : d) v = (gen() & 1) ? 1.0 : -1.0;

    std::vector<double> q_base, q_double, absk;
    for (int k = -k_half; k <= k_half; ++k) {
        auto tab = build_block_table(M, part, k, alpha, y_max + j_half, dz);
        double qb = 0.0, qd = 0.0;
        for (int d = 0; d < total_draws; ++d) {
            const auto& a = draws[d];
            double nrm = 0.0;
            for (int b = 0; b <= alpha; ++b) {
                const auto& F = tab.f[b];
                for (int iy = 0; iy < ny; ++iy) {
                    // z index of y_i - j: iy + per_unit*(j_half - j)
                    cplx acc = 0.0;
                    int base = iy;
                    for (int j = -j_half; j <= j_half; ++j)
                        acc += a[j + j_half] * F[base + per_unit * (j_half - j)];
                    nrm = std::max(nrm, std::abs(acc));
                }
            }
            if (d < n_rademacher) qb = std::max(qb, nrm);
            qd = std::max(qd, nrm);
        }
        q_base.push_back(qb);
        q_double.push_back(qd);
        absk.push_back(std::abs((double)k));
        out.rows.push_back({k, qb, qb * (1.0 + (double)k * k)});
    }

    std::vector<double> stat(out.rows.size());
    for (size_t i = 0; i < out.rows.size(); ++i) stat[i] = out.rows[i].stat;
    double sup = *std::max_element(stat.begin(), stat.end());
    double sup_d = 0.0;
    for (size_t i = 0; i < stat.size(); ++i)
        sup_d = std::max(sup_d, q_double[i] * (1.0 + absk[i] * absk[i]));
    double min_small = std::numeric_limits<double>::infinity();
    for (const auto& r : out.rows)
        if (std::abs(r.k) <= 2) min_small = std::min(min_small, r.stat);
    double rho = spearman_rho(absk, stat);
    double stability = sup > 0 ? (sup_d - sup) / sup : 0.0;

    rep.stat("sup_stat", sup);
    rep.stat("ratio_to_min_small_k", min_small > 0 ? sup / min_small : 0.0);
    rep.stat("spearman_rho", rho);
    rep.stat("stability", stability);
    rep.stat("n_draws", n_rademacher);
    // growth test is one-sided: a decaying statistic is fine, growth is not
    rep.pass = std::isfinite(sup) && stability < rep.tolerance && rho <= 0.5;
    return out;
}

}  // namespace mellincalc
