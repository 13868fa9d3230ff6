#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mellincalc/grids.hpp"

namespace mellincalc {

// Run configuration.  alpha is deliberately default-free: the calculus order
// is a property of the operator under study and must be stated.
struct RunConfig {
    int alpha = -1;  // required
    std::string multiplier = "heat";
    std::string model = "cycle:16";
    std::vector<double> p_values = {2.0, 4.0};
    std::uint64_t seed = 20240501;
    std::string output_dir = "out";

    // grid overrides; ppd = 0 means "choose from u_max"
    double s_min = 1e-8, s_max = 1e8;
    int s_ppd = 0;
    double u_max = 2048.0, du = 1.0 / 64;
    int t_jmin = -40, t_jmax = 40, t_q = 8;
    int ensemble = 100;
    int k_half = 8;        // decomposition block range in suite runs
    int rademacher = 64;

    LogGrid sgrid(double needed_u_max) const;
    UGrid ugrid() const { return UGrid{u_max, du}; }
    TGrid tgrid() const { return TGrid{t_jmin, t_jmax, t_q}; }
    std::string digest() const;
};

// points per decade large enough that the lattice half-band pi/dx clears
// u_max, rounded up to a multiple of 256
int ppd_for(double u_max);

// flat key=value text (newlines or commas between entries, [a,b] lists,
// '#' comments); a leading '{' switches to JSON with the same keys
RunConfig parse_config(const std::string& text);

RunConfig config_from_file(const std::string& path);

}  // namespace mellincalc
