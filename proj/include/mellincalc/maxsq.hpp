#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mellincalc/grids.hpp"
#include "mellincalc/mellin.hpp"
#include "mellincalc/operator_model.hpp"
#include "mellincalc/report.hpp"

namespace mellincalc {

struct MaximalResult {
    Signal values;             // pointwise sup over t of |phi(tL)f|
    double refine_change = 0;  // relative change when Q doubles
    bool stable = false;       // change < 1%
    bool widened = false;      // grid was widened and retried once
};

// sup_{t in grid} |phi(tL) f|, certified by one grid-doubling pass; a >5%
// change widens the range and retries once before reporting instability
MaximalResult maximal_function(const SpectralModel& m, const MultiplierSpec& phi, const Signal& f,
                               const TGrid& tg = {});

// sup over dyadic t = 2^{-k}, k in [k_min, k_max]
Signal maximal_discrete(const SpectralModel& m, const MultiplierSpec& phi, const Signal& f,
                        int k_min, int k_max);

// S_psi(f)(x) = (int |psi(tL)f(x)|^2 dt/t)^{1/2}; requires psi(0) = 0
Signal square_function(const SpectralModel& m, const MultiplierSpec& psi, const Signal& f,
                       const TGrid& tg = {});

Signal square_function_discrete(const SpectralModel& m, const MultiplierSpec& phi,
                                const Signal& f, int k_min, int k_max);

// the same square function through (2pi)^{-1} int |M(psi)(u) L^{iu}f|^2 du
Signal square_function_mellin(const SpectralModel& m, const Signal& f, const MellinSamples& M);

struct CowlingResult {
    Signal lhs;  // [phi(tL) - phi(0) e^{-tL}] f, directly from the calculus
    Signal rhs;  // (2pi)^{-1} int A_phi(u) t^{iu} L^{iu} f du
    double max_rel_residual = 0.0;
    double lhs_scale = 0.0;
};

CowlingResult cowling_reconstruct(const SpectralModel& m, const MultiplierSpec& phi,
                                  const Signal& f, double t, const MellinSamples& A);

enum class RatioKind { Max, Square, SquareLower };

struct RatioConfig {
    int n_signals = 100;
    std::uint64_t seed = 12345;
    double p = 2.0;
    RatioKind kind = RatioKind::Max;
    TGrid tgrid = {};
    double norm_divisor = 1.0;  // N(phi) for the maximal kind; 1 otherwise
};

// max_f of the chosen ratio over a seeded gaussian ensemble, with a
// stability figure from doubling the ensemble; per-signal ratios are kept
// for the CSV artifact
struct RatioExperiment {
    VerificationReport report;
    std::vector<double> per_signal;  // normalized ratio per ensemble member
};

RatioExperiment bound_ratio_experiment(const SpectralModel& m, const MultiplierSpec& spec,
                                       const RatioConfig& cfg);

}  // namespace mellincalc
