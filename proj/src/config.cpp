#include "wick/config.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace wick {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
    std::string out = "invalid configuration (" +
                      std::to_string(violations.size()) + " problem" +
                      (violations.size() == 1 ? "" : "s") + "):";
    for (const std::string& v : violations) out += "\n  - " + v;
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
    return parts;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size() && std::isfinite(out);
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_int(const std::string& s, int& out) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) return false;
        out = static_cast<int>(v);
        return static_cast<long>(out) == v;
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
    try {
        std::size_t pos = 0;
        out = std::stoull(s, &pos);
        return pos == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

} // namespace

std::string to_string(RunMode mode) {
    switch (mode) {
    case RunMode::gaussian_llt: return "gaussian-llt";
    case RunMode::poisson_lsn: return "poisson-lsn";
    case RunMode::verify: return "verify";
    }
    return "verify";
}

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)),
      violations_(std::move(violations)) {}

DensitySpec parse_density_spec(const std::string& text) {
    DensitySpec spec;
    std::string t = trim(text);
    if (t == "h4-canonical") {
        spec.builtin = t;
        spec.poisson_side = false;
        spec.values = {1.0, 0.0, 0.0, 0.0, 0.1};
        return spec;
    }
    if (t == "three-point") {
        spec.builtin = t;
        spec.poisson_side = true;
        spec.values = {0.25, 0.5, 0.25};
        return spec;
    }
    std::string body;
    if (t.rfind("coeffs:", 0) == 0) {
        spec.poisson_side = false;
        body = t.substr(7);
    } else if (t.rfind("pmf:", 0) == 0) {
        spec.poisson_side = true;
        body = t.substr(4);
    } else {
        throw std::invalid_argument(
            "In wick::parse_density_spec: unknown density '" + t +
            "'; expected h4-canonical, three-point, coeffs:..., or pmf:...");
    }
    for (const std::string& part : split(body, ',')) {
        double v;
        if (part.empty() || !parse_double(part, v))
            throw std::invalid_argument(
                "In wick::parse_density_spec: bad list entry '" + part +
                "' in '" + t + "'");
        spec.values.push_back(v);
    }
    if (spec.values.empty())
        throw std::invalid_argument(
            "In wick::parse_density_spec: empty list in '" + t + "'");
    return spec;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(
                "In wick::parse_key_values: line " + std::to_string(lineno) +
                " has no '=': '" + line + "'");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

ExperimentConfig parse_config(
    const std::map<std::string, std::string>& file_values,
    const std::map<std::string, std::string>& overrides) {
    std::map<std::string, std::string> merged = file_values;
    for (const auto& [k, v] : overrides) merged[k] = v;

    ExperimentConfig cfg;
    std::vector<std::string> violations;

    for (const auto& [key, value] : merged) {
        if (key == "mode") {
            if (value == "gaussian-llt") cfg.mode = RunMode::gaussian_llt;
            else if (value == "poisson-lsn") cfg.mode = RunMode::poisson_lsn;
            else if (value == "verify") cfg.mode = RunMode::verify;
            else
                violations.push_back("mode '" + value +
                                     "' is not one of gaussian-llt, "
                                     "poisson-lsn, verify");
        } else if (key == "density") {
            cfg.density = value;
        } else if (key == "a") {
            if (!parse_double(value, cfg.a))
                violations.push_back("a '" + value + "' is not a number");
        } else if (key == "beta") {
            if (!parse_double(value, cfg.beta))
                violations.push_back("beta '" + value + "' is not a number");
        } else if (key == "n_list") {
            std::vector<int> ns;
            bool ok = !value.empty();
            for (const std::string& part : split(value, ',')) {
                int n;
                if (part.empty() || !parse_int(part, n)) {
                    ok = false;
                    break;
                }
                ns.push_back(n);
            }
            if (ok && !ns.empty()) cfg.n_list = std::move(ns);
            else
                violations.push_back("n_list '" + value +
                                     "' is not a comma-separated integer list");
        } else if (key == "d_cap") {
            if (!parse_int(value, cfg.d_cap))
                violations.push_back("d_cap '" + value + "' is not an integer");
        } else if (key == "quad_order") {
            if (!parse_int(value, cfg.quad_order))
                violations.push_back("quad_order '" + value +
                                     "' is not an integer");
        } else if (key == "seed") {
            if (!parse_u64(value, cfg.seed))
                violations.push_back("seed '" + value +
                                     "' is not an unsigned 64-bit integer");
        } else if (key == "mc_samples") {
            if (!parse_int(value, cfg.mc_samples))
                violations.push_back("mc_samples '" + value +
                                     "' is not an integer");
        } else if (key == "out") {
            cfg.out = value;
        } else {
            violations.push_back("unknown key '" + key + "'");
        }
    }

    for (const std::string& v : validate_config(cfg)) violations.push_back(v);
    if (!violations.empty()) throw ConfigError(std::move(violations));
    return cfg;
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> violations;

    DensitySpec spec;
    bool density_ok = true;
    try {
        spec = parse_density_spec(cfg.density);
    } catch (const std::invalid_argument& e) {
        density_ok = false;
        violations.push_back(e.what());
    }
    if (density_ok && cfg.mode == RunMode::gaussian_llt && spec.poisson_side)
        violations.push_back(
            "density '" + cfg.density +
            "' is Poisson-side; mode gaussian-llt needs h4-canonical or "
            "coeffs:...");
    if (density_ok && cfg.mode == RunMode::poisson_lsn && !spec.poisson_side)
        violations.push_back(
            "density '" + cfg.density +
            "' is Gaussian-side; mode poisson-lsn needs three-point or "
            "pmf:...");

    if (!(cfg.a > 0.0))
        violations.push_back("a = " + format_double(cfg.a) +
                             " must be positive");

    if (cfg.mode == RunMode::gaussian_llt &&
        !(cfg.beta > 2.0 / 3.0 && cfg.beta < 1.0))
        violations.push_back(
            "beta = " + format_double(cfg.beta) +
            " is refused for gaussian-llt: the schedule must satisfy "
            "b_n / n^(2/3) -> infinity and b_n / n -> 0, i.e. beta in "
            "(2/3, 1)");
    if (cfg.mode == RunMode::poisson_lsn &&
        !(cfg.beta > 0.5 && cfg.beta < 1.0))
        violations.push_back(
            "beta = " + format_double(cfg.beta) +
            " is refused for poisson-lsn: the schedule must satisfy "
            "b_n / n^(1/2) -> infinity and b_n / n -> 0, i.e. beta in "
            "(1/2, 1)");
    if (cfg.mode == RunMode::verify && !(cfg.beta > 0.0 && cfg.beta < 1.0))
        violations.push_back("beta = " + format_double(cfg.beta) +
                             " must lie in (0, 1)");

    if (cfg.n_list.empty())
        violations.push_back("n_list must not be empty");
    for (int n : cfg.n_list)
        if (n < 1) {
            violations.push_back("n_list contains " + std::to_string(n) +
                                 "; all entries must be >= 1");
            break;
        }

    if (cfg.d_cap < 1)
        violations.push_back("d_cap = " + std::to_string(cfg.d_cap) +
                             " must be >= 1");
    if (cfg.quad_order < 0)
        violations.push_back("quad_order = " + std::to_string(cfg.quad_order) +
                             " must be >= 0 (0 = automatic)");
    if (cfg.mc_samples != 0 && cfg.mc_samples < 1000)
        violations.push_back("mc_samples = " + std::to_string(cfg.mc_samples) +
                             " must be 0 (disabled) or >= 1000");
    if (cfg.out.empty())
        violations.push_back("out must not be empty");

    return violations;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "mode = " << to_string(cfg.mode) << "\n";
    out << "density = " << cfg.density << "\n";
    out << "a = " << format_double(cfg.a) << "\n";
    out << "beta = " << format_double(cfg.beta) << "\n";
    out << "n_list = ";
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i)
        out << (i ? "," : "") << cfg.n_list[i];
    out << "\n";
    out << "d_cap = " << cfg.d_cap << "\n";
    out << "quad_order = " << cfg.quad_order << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "mc_samples = " << cfg.mc_samples << "\n";
    out << "out = " << cfg.out << "\n";
    return out.str();
}

} // namespace wick
