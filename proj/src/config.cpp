#include "mellincalc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mellincalc {

int ppd_for(double u_max) {
    int need = (int)std::ceil(u_max * std::log(10.0) / M_PI);
    int ppd = 256;
    while (ppd < need) ppd += 256;
    return std::max(ppd, 1024);
}

LogGrid RunConfig::sgrid(double needed_u_max) const {
    int ppd = s_ppd > 0 ? s_ppd : ppd_for(needed_u_max);
    return LogGrid{s_min, s_max, ppd};
}

std::string RunConfig::digest() const {
    std::ostringstream os;
    os << "alpha=" << alpha << ";multiplier=" << multiplier << ";model=" << model << ";p=[";
    for (size_t i = 0; i < p_values.size(); ++i) os << (i ? "," : "") << p_values[i];
    os << "];seed=" << seed;
    return os.str();
}

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) {
    throw std::invalid_argument("config: key '" + key + "': " + why);
}

std::vector<double> parse_list(const std::string& key, std::string v) {
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') bad(key, "unterminated list");
        v = v.substr(1, v.size() - 2);
    }
    for (char& c : v)
        if (c == ',' || c == ';') c = ' ';
    std::istringstream is(v);
    std::vector<double> out;
    double x;
    while (is >> x) out.push_back(x);
    if (!is.eof()) bad(key, "malformed number in list");
    return out;
}

void validate(RunConfig& c) {
    if (c.alpha < 0) bad("alpha", "required, must be a non-negative integer");
    if (c.p_values.empty()) bad("p_values", "must be non-empty");
    for (double p : c.p_values)
        if (!(p > 1.0) || !std::isfinite(p)) bad("p_values", "every p must satisfy 1 < p < inf");
    if (c.ensemble < 1) bad("ensemble", "must be >= 1");
    if (c.rademacher < 32) bad("rademacher", "must be >= 32");
    if (c.u_max <= 0 || c.du <= 0) bad("ugrid", "u_max and du must be positive");
    if (c.s_min <= 0 || c.s_max <= c.s_min) bad("sgrid", "need 0 < s_min < s_max");
    if (c.k_half < 0) bad("k_half", "must be >= 0");
}

void apply(RunConfig& c, const std::string& key, const std::string& val) {
    auto as_int = [&](const char* k) {
        try {
            size_t pos;
            int v = std::stoi(val, &pos);
            if (pos != val.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (...) {
            bad(k, "expected an integer, got '" + val + "'");
        }
    };
    auto as_double = [&](const char* k) {
        try {
            size_t pos;
            double v = std::stod(val, &pos);
            if (pos != val.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (...) {
            bad(k, "expected a number, got '" + val + "'");
        }
    };
    if (key == "alpha") {
        int a = as_int("alpha");
        if (a < 0) bad("alpha", "must be >= 0");
        c.alpha = a;
    } else if (key == "multiplier") c.multiplier = val;
    else if (key == "model") c.model = val;
    else if (key == "p_values") c.p_values = parse_list(key, val);
    else if (key == "seed") c.seed = std::stoull(val);
    else if (key == "out" || key == "output_dir") c.output_dir = val;
    else if (key == "s_min") c.s_min = as_double("s_min");
    else if (key == "s_max") c.s_max = as_double("s_max");
    else if (key == "s_ppd") c.s_ppd = as_int("s_ppd");
    else if (key == "u_max") c.u_max = as_double("u_max");
    else if (key == "du") c.du = as_double("du");
    else if (key == "t_jmin") c.t_jmin = as_int("t_jmin");
    else if (key == "t_jmax") c.t_jmax = as_int("t_jmax");
    else if (key == "t_q") c.t_q = as_int("t_q");
    else if (key == "ensemble") c.ensemble = as_int("ensemble");
    else if (key == "k_half") c.k_half = as_int("k_half");
    else if (key == "rademacher") c.rademacher = as_int("rademacher");
    else bad(key, "unknown key");
}

RunConfig parse_json(const std::string& text) {
    RunConfig c;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        std::string sval;
        if (v.is_string())
            sval = v.get<std::string>();
        else if (v.is_array()) {
            std::ostringstream os;
            os << "[";
            for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].dump();
            os << "]";
            sval = os.str();
        } else
            sval = v.dump();
        apply(c, it.key(), sval);
    }
    validate(c);
    return c;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    std::string trimmed = text;
    size_t b = trimmed.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) throw std::invalid_argument("config: empty document");
    if (trimmed[b] == '{') return parse_json(text);

    RunConfig c;
    // split on newlines and on commas that are not inside brackets
    std::vector<std::string> entries;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (ch == '\n' || (ch == ',' && depth == 0)) {
            entries.push_back(cur);
            cur.clear();
        } else
            cur += ch;
    }
    entries.push_back(cur);
    int line = 0;
    for (auto& e : entries) {
        ++line;
        auto hash = e.find('#');
        if (hash != std::string::npos) e = e.substr(0, hash);
        size_t lo = e.find_first_not_of(" \t\r");
        if (lo == std::string::npos) continue;
        size_t hi = e.find_last_not_of(" \t\r");
        std::string entry = e.substr(lo, hi - lo + 1);
        auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: entry " + std::to_string(line) +
                                        ": expected key=value, got '" + entry + "'");
        std::string key = entry.substr(0, eq);
        std::string val = entry.substr(eq + 1);
        auto strip = [](std::string s) {
            size_t a = s.find_first_not_of(" \t");
            size_t z = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, z - a + 1);
        };
        apply(c, strip(key), strip(val));
    }
    validate(c);
    return c;
}

RunConfig config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

}  // namespace mellincalc
