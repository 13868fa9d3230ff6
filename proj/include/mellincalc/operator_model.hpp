#pragma once

#include <functional>
#include <vector>

#include <json.hpp>

#include "mellincalc/multiplier.hpp"

namespace mellincalc {

// Finite self-adjoint model: strictly positive eigenvalues and a real
// orthonormal eigenbasis over a weighted point set X.  dim may be smaller
// than |X| (the cycle Laplacian drops its kernel), in which case all spectral
// calculus acts on the projection onto the eigenspan.
struct SpectralModel {
    int npoints = 0;
    int dim = 0;
    std::vector<double> eigenvalues;         // ascending, > 0
    std::vector<std::vector<double>> basis;  // dim rows of length npoints
    std::vector<double> weights;             // nu({x}), > 0
    std::string name;

    double gram_defect() const;  // max |<e_i,e_j>_w - delta_ij|
    nlohmann::ordered_json to_json() const;
};

using Signal = std::vector<cplx>;

// graph Laplacian of the n-cycle with the constant eigenvector removed
SpectralModel build_cycle_laplacian(int n);

SpectralModel build_diagonal(const std::vector<double>& lambdas,
                             const std::vector<double>& weights);

// <f, e_i>_w for every basis row
std::vector<cplx> coefficients(const SpectralModel& m, const Signal& f);
Signal from_coefficients(const SpectralModel& m, const std::vector<cplx>& c);

// m(L) f = sum_i m(lambda_i) <f, e_i>_w e_i
Signal spectral_apply(const SpectralModel& m, const std::function<cplx(double)>& symbol,
                      const Signal& f);
Signal spectral_apply(const SpectralModel& m, const MultiplierSpec& spec, const Signal& f);

// L^{iu} f; unitary on the eigenspan
Signal imaginary_power(const SpectralModel& m, double u, const Signal& f);

double lp_norm(const SpectralModel& m, const Signal& f, double p);

// lower bound estimate of ||L^{iu}||_{p->p}: random starts plus dual-vector
// refinement steps
double imaginary_power_norm_estimate(const SpectralModel& m, double u, double p, int n_samples,
                                     std::uint64_t seed);

// deterministic complex gaussian signals (Box-Muller over mt19937_64)
Signal random_signal(const SpectralModel& m, std::uint64_t seed, std::uint64_t index);

}  // namespace mellincalc
