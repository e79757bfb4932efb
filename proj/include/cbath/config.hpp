// config.hpp — flat key=value scenario configuration.
//
// Format: one `key = value` per line, '#' starts a comment, blank lines
// ignored. Unknown and duplicate keys are hard errors so a typo in a physics
// parameter cannot silently fall back to a default. beta accepts "inf" for
// the zero-temperature sentinel.

#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cbath/bath.hpp"
#include "cbath/errors.hpp"
#include "cbath/gaussian.hpp"
#include "cbath/propagator.hpp"
#include "cbath/quadrature.hpp"

namespace cbath {

struct ScenarioConfig {
    BathSpec bath;
    InitialStateSpec init;
    double t_max{20.0};
    int n_times{201};
    QuadratureConfig quad;
    bool t_min_explicit{false}; // t_min defaults to default_t_min(bath) when unset
    std::string sweep_axis;     // one of z, beta, eta, k0L; empty = no sweep
    std::vector<double> sweep_values;
    std::vector<std::string> sweep_tokens; // literal value strings, used in filenames
    std::string output_path{"scenario.csv"};

    // apply one sweep value, returning the single-run config for that point
    ScenarioConfig at_sweep_value(double v) const {
        ScenarioConfig c = *this;
        c.sweep_axis.clear();
        c.sweep_values.clear();
        c.sweep_tokens.clear();
        if (sweep_axis == "z") c.init.z = v;
        else if (sweep_axis == "beta") c.bath.beta = v;
        else if (sweep_axis == "eta") c.bath.eta = v;
        else if (sweep_axis == "k0L") c.bath.k0L = v;
        else throw ConfigError("sweep_axis must be one of z, beta, eta, k0L");
        if (!t_min_explicit) c.quad.t_min = default_t_min(c.bath);
        return c;
    }

    void finalize() {
        if (!t_min_explicit) quad.t_min = default_t_min(bath);
    }

    void validate() const {
        bath.validate();
        init.validate();
        quad.validate();
        if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max must be positive");
        if (n_times < 1) throw ConfigError("n_times must be >= 1");
        if (output_path.empty()) throw ConfigError("output_path must not be empty");
        if (!sweep_axis.empty()) {
            if (sweep_values.empty())
                throw ConfigError("sweep_values must be set when sweep_axis is set");
            for (std::size_t i = 0; i < sweep_values.size(); ++i)
                at_sweep_value(sweep_values[i]).validate(); // i.e. each value is valid on its axis
        } else if (!sweep_values.empty()) {
            throw ConfigError("sweep_values requires sweep_axis");
        }
    }

    std::vector<double> time_grid() const {
        std::vector<double> t(static_cast<std::size_t>(n_times));
        if (n_times == 1) {
            t[0] = 0.0;
            return t;
        }
        for (int i = 0; i < n_times; ++i)
            t[static_cast<std::size_t>(i)] = t_max * i / (n_times - 1.0);
        return t;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline double parse_double(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError(key + ": cannot parse '" + value + "' as a number");
    return v;
}

inline int parse_int(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw ConfigError(key + ": cannot parse '" + value + "' as an integer");
    if (v < -1000000000L || v > 1000000000L) throw ConfigError(key + ": value out of range");
    return static_cast<int>(v);
}

inline std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace detail

inline ScenarioConfig parse_config(std::istream& in, const std::string& source = "<config>") {
    ScenarioConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        const std::string where = source + ":" + std::to_string(line_no);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");

        if (key == "eta") cfg.bath.eta = detail::parse_double(key, value);
        else if (key == "mass") cfg.bath.mass = detail::parse_double(key, value);
        else if (key == "omega_cutoff") cfg.bath.omega_cutoff = detail::parse_double(key, value);
        else if (key == "beta") cfg.bath.beta = detail::parse_double(key, value);
        else if (key == "k0L") cfg.bath.k0L = detail::parse_double(key, value);
        else if (key == "z") cfg.init.z = detail::parse_double(key, value);
        else if (key == "sigma") cfg.init.sigma = detail::parse_double(key, value);
        else if (key == "t_max") cfg.t_max = detail::parse_double(key, value);
        else if (key == "n_times") cfg.n_times = detail::parse_int(key, value);
        else if (key == "omega_panels") cfg.quad.omega_panels = detail::parse_int(key, value);
        else if (key == "time_panels") cfg.quad.time_panels = detail::parse_int(key, value);
        else if (key == "tol") cfg.quad.tol = detail::parse_double(key, value);
        else if (key == "t_min") {
            cfg.quad.t_min = detail::parse_double(key, value);
            cfg.t_min_explicit = true;
        } else if (key == "sweep_axis") cfg.sweep_axis = value;
        else if (key == "sweep_values") {
            cfg.sweep_tokens = detail::split_list(value);
            if (cfg.sweep_tokens.empty()) throw ConfigError(where + ": empty sweep_values list");
            for (const auto& tok : cfg.sweep_tokens)
                cfg.sweep_values.push_back(detail::parse_double(key, tok));
        } else if (key == "output_path") cfg.output_path = value;
        else throw ConfigError(where + ": unknown key '" + key + "'");
    }
    cfg.finalize();
    cfg.validate();
    return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

} // namespace cbath
