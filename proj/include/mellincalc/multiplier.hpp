#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mellincalc/quadrature.hpp"

namespace mellincalc {

using cplx = std::complex<double>;

// A scalar multiplier function m : [0, inf) -> C with closed-form derivatives
// up to max_order.  deriv(0, s) == eval(s).  Where the closed form has a kink
// the derivative evaluator returns the one-sided value from the left and the
// spec carries kink metadata.
struct MultiplierSpec {
    std::string name;
    int max_order = 0;
    std::optional<double> support_bound;
    cplx value_at_zero = 0.0;
    std::function<cplx(double)> eval;
    std::function<cplx(int, double)> deriv;
    bool has_kink = false;
    double kink_pos = 0.0;
    // jump of the top-order derivative at the kink, when known
    cplx kink_jump = 0.0;

    bool is_real = true;  // catalog families except power_iu are real-valued
};

// Catalog families:
//   heat             e^{-s}
//   sheat            s e^{-s}
//   bochner_riesz:d  (1-s)^d on [0,1)
//   br_psi:d         s (1-s)^d on [0,1)
//   bump             smooth C^inf bump, support [1/2, 2], plateau [3/4, 3/2]
//   zero, one        constants
//   power_iu:u0      s^{i u0}
MultiplierSpec builtin_catalog(const std::string& name, const std::vector<double>& params = {});

// "family:p1:p2" or "family:p1,p2" addressing used by the CLI
MultiplierSpec parse_multiplier(const std::string& text);

// s -> m(c s); MH norms are invariant under this map
MultiplierSpec scale_argument(const MultiplierSpec& m, double c);

// m(s) - m(0) e^{-s}; vanishes at 0, which makes ds/s integrals converge there
MultiplierSpec compensate(const MultiplierSpec& m);

// wrap a plain function; derivatives fall back to central differences in
// log s (step 1e-4 decades) with one Richardson pass
MultiplierSpec from_function(const std::string& name, std::function<cplx(double)> f,
                             int max_order, std::optional<double> support_bound,
                             cplx value_at_zero);

// smooth transition tau(0)=0, tau(1)=1, flat to all orders at both ends;
// derivatives available in closed recursive form
double smooth_transition(double x);
double smooth_transition_deriv(int order, double x);

// grid used for sup-norm estimates over lambda > 0; dense enough that the
// sampled sup of the narrow transition peaks is stable under dilation
struct SupGrid {
    double lo = 1e-6;
    double hi = 1e6;
    int points_per_decade = 1024;
};

struct NormReport {
    int alpha = 0;
    std::vector<double> mh;  // ||m||_(beta), beta = 0..alpha
    double mh_alpha = 0.0;
    double c0 = 0.0, c1 = 0.0, c_top = 0.0;  // C(eta, beta), beta in {0, 1, alpha+2}
    double d_top = 0.0;                      // D(eta, alpha+2)
    double c_unit_norm = 0.0;                // ||eta||_{C^{alpha+2}([0,1])}
    double n_value = 0.0;                    // N(eta), +inf when a tail diverges
    double n_tilde = 0.0;                    // N(eta) + D(eta, alpha+2)
    bool divergent = false;
    std::string grid_meta;

    // flat object: mh_0..mh_alpha, mh_alpha_max, C_0, C_1, C_top, D_top, N, N_tilde
    std::string to_json() const;
};

// sup over a log grid of |lambda^beta m^{(beta)}(lambda)|, beta = 0..alpha
NormReport mh_norm(const MultiplierSpec& m, int alpha, const SupGrid& grid = {});

// the full report: MH norms plus C(eta, beta), D(eta, alpha+2), N, N~
NormReport smoothness_norms(const MultiplierSpec& eta, int alpha, const QuadConfig& quad = {},
                            const SupGrid& grid = {});

}  // namespace mellincalc
