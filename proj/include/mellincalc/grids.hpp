#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace mellincalc {

// Log-equispaced grid on [s_min, s_max].  Node count is
// points_per_decade * decades + 1; the decade count must be integral.
struct LogGrid {
    double s_min = 1e-8;
    double s_max = 1e8;
    int points_per_decade = 1024;

    int decades() const {
        double d = std::log10(s_max / s_min);
        int di = (int)std::lround(d);
        if (s_min <= 0.0 || s_max <= s_min || std::abs(d - di) > 1e-9)
            throw std::invalid_argument("LogGrid: span must be a whole number of decades");
        return di;
    }
    int size() const { return points_per_decade * decades() + 1; }
    // spacing in x = log s
    double dx() const { return std::log(10.0) / points_per_decade; }
    double x_min() const { return std::log(s_min); }
    double x_node(int i) const { return x_min() + i * dx(); }
    double node(int i) const { return std::exp(x_node(i)); }
    std::vector<double> nodes() const {
        std::vector<double> v(size());
        for (int i = 0; i < size(); ++i) v[i] = node(i);
        return v;
    }
    std::string describe() const;
};

// Symmetric equispaced grid on [-u_max, u_max] containing 0.
struct UGrid {
    double u_max = 2048.0;
    double du = 1.0 / 64;

    int half() const {
        int h = (int)std::lround(u_max / du);
        if (h < 1 || du <= 0.0) throw std::invalid_argument("UGrid: bad u_max/du");
        return h;
    }
    int size() const { return 2 * half() + 1; }
    double node(int i) const { return (i - half()) * du; }  // i in [0, size)
    int index_of_zero() const { return half(); }
    // nearest grid index to u
    int nearest(double u) const {
        int i = half() + (int)std::lround(u / du);
        if (i < 0 || i >= size()) throw std::out_of_range("UGrid: u outside grid");
        return i;
    }
    std::string describe() const;
};

// Dyadic time grid t = 2^{j/q}, j = q*j_min .. q*j_max.
struct TGrid {
    int j_min = -40;
    int j_max = 40;
    int q = 8;

    int size() const {
        if (j_max <= j_min || q < 1) throw std::invalid_argument("TGrid: bad range");
        return q * (j_max - j_min) + 1;
    }
    double node(int i) const { return std::exp2((double)(q * j_min + i) / q); }
    // spacing of log t
    double dlog() const { return std::log(2.0) / q; }
    TGrid refined() const { return TGrid{j_min, j_max, 2 * q}; }
    TGrid widened() const {
        int w = (j_max - j_min) / 4 + 1;
        return TGrid{j_min - w, j_max + w, q};
    }
    std::string describe() const;
};

}  // namespace mellincalc
