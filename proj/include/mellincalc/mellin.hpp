#pragma once

#include <string>
#include <vector>

#include "mellincalc/grids.hpp"
#include "mellincalc/multiplier.hpp"

namespace mellincalc {

// M(m)(u) = int_0^inf s^{-iu} m(s) ds/s sampled on a symmetric u-grid,
// optionally with the first two u-derivatives (computed by quadrature with
// (-i log s) weights, not by differencing).
struct MellinSamples {
    UGrid grid;
    std::vector<cplx> val;
    std::vector<cplx> du;   // empty unless requested
    std::vector<cplx> d2u;  // empty unless requested
    std::string source;
    std::string grid_meta;
    double nyquist_halfband = 0.0;  // pi/dx of the s-grid used
    bool tail_warning = false;      // |m| ds/s tail not negligible at s_max

    cplx at_index(int i) const { return val[i]; }
    cplx value_nearest(double u) const { return val[grid.nearest(u)]; }
    bool has_derivatives() const { return !du.empty(); }
};

struct MellinOptions {
    bool derivatives = false;
    int head_terms = 8;  // Taylor orders of m at 0 folded into the lattice head
};

// Quadrature is a uniform lattice sum in x = log s plus an analytic
// geometric-series head for the part of (0, s_min) carried by the Taylor
// expansion of m at 0.  Requires m(0) = 0 (use compensate() otherwise) and
// pi/dx >= u_max so lattice aliasing stays out of band.
MellinSamples mellin_transform(const MultiplierSpec& m, const LogGrid& sgrid, const UGrid& ugrid,
                               const MellinOptions& opt = {});

// m(s) = (2pi)^{-1} int M(m)(u) s^{iu} du on the nodes of sgrid
std::vector<cplx> mellin_inverse(const MellinSamples& M, const LogGrid& sgrid);

struct PlancherelResult {
    double lhs = 0.0;       // int |m|^2 ds/s
    double rhs = 0.0;       // (2pi)^{-1} int |M(m)|^2 du
    double residual = 0.0;  // |lhs - rhs| / max(lhs, eps)
    std::string grid_meta;
};

PlancherelResult plancherel_residual(const MultiplierSpec& m, const LogGrid& sgrid,
                                     const UGrid& ugrid);

// A_phi(u) = int s^{-iu} [phi(s) - phi(0) e^{-s}] ds/s.  The compensation
// makes the integrand O(1) at s = 0 for any C^1 multiplier.
MellinSamples a_phi(const MultiplierSpec& phi, const LogGrid& sgrid, const UGrid& ugrid);

struct DecayReport {
    double sup_g = 0.0;     // sup |samples(u)| (1+|u|)^order
    double sup_at = 0.0;    // u attaining the sup
    double slope = 0.0;     // log-log envelope slope over the fit window
    double k_const = 0.0;   // sup_g / norm_bound
    int order = 0;
    double fit_lo = 0.0, fit_hi = 0.0;
    bool pass = false;      // slope <= -order + 0.25 and k_const finite
};

// Envelope slope: per-bin maxima of |samples| (8 bins per decade) fitted by
// least squares in log-log over [fit_lo, fit_hi].
DecayReport decay_report(const MellinSamples& samples, int order, double norm_bound,
                         double fit_lo = 10.0, double fit_hi = 1000.0);

// sum over one derivative channel is exposed for reuse by the decomposition
DecayReport decay_report_on(const std::vector<cplx>& values, const UGrid& grid, int order,
                            double norm_bound, double fit_lo = 10.0, double fit_hi = 1000.0);

}  // namespace mellincalc
