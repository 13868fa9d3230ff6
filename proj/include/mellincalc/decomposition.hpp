#pragma once

#include <cstdint>
#include <vector>

#include "mellincalc/mellin.hpp"
#include "mellincalc/report.hpp"

namespace mellincalc {

// Smooth partition of unity on the line: h supported in [-pi, pi] with
// sum_k h(u - pi k) = 1; built from the flat smooth transition so closed-form
// derivatives are available.
struct PartitionSpec {
    double shift = M_PI;
    double h(double u) const;
    double dh(int order, double u) const;  // dh(0, .) == h
    double h_k(int k, double u) const { return h(u - shift * k); }
};

PartitionSpec build_partition();

// b_{j,k}(lambda) = int h_k(u) M(psi)(u) e^{-iju} lambda^{iu} du over block k
std::vector<cplx> b_jk(const MellinSamples& M, const PartitionSpec& part, int j, int k,
                       const std::vector<double>& lambdas);

// d^beta/dy^beta C_{j,k}(y) = i^beta int h_k M(psi) u^beta e^{i(y-j)u} du;
// orders above the calculus parameter alpha are refused when alpha is given
cplx cjk_derivative(const MellinSamples& M, const PartitionSpec& part, int j, int k, int beta,
                    double y, int alpha = -1);

// C_{j,k}(y) depends on y - j only; tables of F_{beta,k}(z) on an equispaced
// z-grid make sign-sequence sweeps cheap
struct BlockTable {
    int k = 0;
    double z0 = 0.0, dz = 0.0;
    std::vector<std::vector<cplx>> f;  // per beta = 0..alpha, over the z-grid
    int zsize() const { return f.empty() ? 0 : (int)f[0].size(); }
};

BlockTable build_block_table(const MellinSamples& M, const PartitionSpec& part, int k, int alpha,
                             double z_max, double dz);

// sup_z |F_{beta,k}| checks: (1+k^2)-normalized block size and the
// (1+k^2) z^2 tail bound, with measured constants and an optional stability
// comparison against a finer-du set of samples
VerificationReport cjk_bounds_report(const MellinSamples& M, const PartitionSpec& part, int alpha,
                                     int k_min, int k_max,
                                     const MellinSamples* M_fine = nullptr);

// Parseval on block k at fixed lambda: int |h_k M lambda^{iu}|^2 du against
// the j-sum of |b_{j,k}(lambda)|^2 under both printed normalizations
VerificationReport parseval_block_check(const MellinSamples& M, const PartitionSpec& part, int k,
                                        double lambda, int j_half);

struct BlockMultiplier {
    std::vector<double> lambdas;
    std::vector<cplx> values;                 // m^a_k(lambda)
    std::vector<std::vector<cplx>> y_derivs;  // beta = 0..alpha at y = log lambda
};

// m^a_k(lambda) = sum_j a_j b_{j,k}(lambda), a finitely supported on
// j = j_min..j_min+len-1
BlockMultiplier block_multiplier(const MellinSamples& M, const PartitionSpec& part, int k,
                                 const std::vector<double>& a, int j_min,
                                 const std::vector<double>& lambdas, int alpha);

struct ClaimRow {
    int k = 0;
    double q = 0.0;     // max over draws of ||sum_j a_j C_{j,k}||_{C^alpha}
    double stat = 0.0;  // q * (1 + k^2)
};

struct ClaimResult {
    VerificationReport report;
    std::vector<ClaimRow> rows;
};

// Rademacher probe of the uniform-in-a Mihlin-Hormander claim; pass needs a
// finite statistic, < 10% movement when the draw count doubles, and no
// growth trend of q(k)(1+k^2) against |k| (one-sided Spearman test)
ClaimResult claim_decay_check(const MellinSamples& M, const PartitionSpec& part, int alpha,
                              int k_half, int n_rademacher, std::uint64_t seed);

// Spearman rank correlation with average ranks on ties
double spearman_rho(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace mellincalc
