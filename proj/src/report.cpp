#include "mellincalc/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mellincalc/grids.hpp"

namespace mellincalc {

double VerificationReport::get(const std::string& key) const {
    for (const auto& [k, v] : statistics)
        if (k == key) return v;
    throw std::out_of_range("report " + check_name + ": no statistic " + key);
}

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["check"] = check_name;
    j["inputs"] = inputs;
    nlohmann::ordered_json st;
    for (const auto& [k, v] : statistics) {
        if (std::isinf(v))
            st[k] = v > 0 ? "inf" : "-inf";
        else if (std::isnan(v))
            st[k] = "nan";
        else
            st[k] = v;
    }
    j["statistics"] = st;
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    j["grid_meta"] = grid_meta;
    j["seed"] = seed;
    return j;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string LogGrid::describe() const {
    std::ostringstream os;
    os << "sgrid[" << s_min << "," << s_max << "]x" << points_per_decade << "ppd";
    return os.str();
}

std::string UGrid::describe() const {
    std::ostringstream os;
    os << "ugrid[-" << u_max << "," << u_max << "]du=1/" << (int)std::lround(1.0 / du);
    return os.str();
}

std::string TGrid::describe() const {
    std::ostringstream os;
    os << "tgrid 2^[" << j_min << "," << j_max << "]q=" << q;
    return os.str();
}

}  // namespace mellincalc
