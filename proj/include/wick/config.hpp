#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wick {

enum class RunMode { gaussian_llt, poisson_lsn, verify };

std::string to_string(RunMode mode);

// Carries every violation found in a config, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

// Run configuration.  The density spec is one of
//   h4-canonical        1 + 0.1 h_4 against the standard Gaussian measure
//   three-point         pmf (0.25, 0.5, 0.25) against Poisson(a)
//   coeffs:g0,g1,...    explicit monic Hermite coefficients (Gaussian side)
//   pmf:p0,p1,...       explicit pmf on {0,...,m}      (Poisson side)
struct ExperimentConfig {
    RunMode mode = RunMode::verify;
    std::string density = "h4-canonical";
    double a = 1.0;                            // Poisson intensity
    double beta = 0.8;                         // b_n = ceil(n^beta)
    std::vector<int> n_list = {4, 16, 64, 256, 1024};
    int d_cap = 64;
    int quad_order = 0;                        // 0 picks the order automatically
    std::uint64_t seed = 12345;
    int mc_samples = 0;                        // 0 disables the Monte Carlo columns
    std::string out = "results.csv";

    bool operator==(const ExperimentConfig&) const = default;
};

// Syntactic layer of a density spec; semantic checks live in
// validate_config (mode match) and the density validators (hypotheses).
struct DensitySpec {
    bool poisson_side = false;     // pmf-valued (vs Hermite-coefficient-valued)
    std::string builtin;           // nonempty for the named densities
    std::vector<double> values;    // coefficient or pmf list
};

// Parses the spec text; throws std::invalid_argument on unknown names or
// malformed lists.
DensitySpec parse_density_spec(const std::string& text);

// Flat "key = value" lines; '#' starts a comment, blank lines are skipped.
// Throws std::invalid_argument on a line without '='.
std::map<std::string, std::string> parse_key_values(const std::string& text);

// Builds a config from file values overlaid with overrides (the flag layer
// wins).  Unknown keys, unparsable values, and semantic violations are all
// collected; ConfigError lists every one of them.
ExperimentConfig parse_config(
    const std::map<std::string, std::string>& file_values,
    const std::map<std::string, std::string>& overrides = {});

// Every semantic violation of an already-built config: schedule exponent
// versus mode, density/mode mismatch, ranges.  Empty means valid.
std::vector<std::string> validate_config(const ExperimentConfig& config);

// Flat key = value text; parse_config(parse_key_values(serialize_config(c)))
// yields a config equal to c.
std::string serialize_config(const ExperimentConfig& config);

} // namespace wick
