#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wick/config.hpp"
#include "wick/gaussian_llt.hpp"
#include "wick/poisson_lsn.hpp"
#include "wick/random.hpp"
#include "wick/records.hpp"

namespace wick {

// Fixed 8-column table: n, b_n, measured_l1, bound, bound_satisfied,
// mc_estimate, mc_std_error, trunc_mass.  Header always present, floats at
// 17 significant digits, Monte Carlo cells empty when disabled.  The output
// depends only on the rows, so equal configs give byte-identical files.
std::string records_to_csv(const std::vector<ConvergenceRecord>& rows);

// Random density against the Gaussian measure: gamma_0 = 1, gamma_1 =
// gamma_2 = 0, random higher coefficients shrunk until the reconstruction
// stays strictly positive on the verification grid.
GaussianDensityInput random_gaussian_density(Rng& rng, int max_degree);

// Random pmf on {0,...,max_support} with strictly positive entries.
FinitePmf random_pmf(Rng& rng, int max_support);

struct SuiteResult {
    std::string name;
    int checks = 0;
    int failures = 0;
    std::vector<std::string> messages; // first few failure details
};

// The four verification suites behind `--mode verify`: orthonormality of
// both bases, second-quantization/Wick algebra identities, the Young
// inequalities, and agreement with the brute-force oracles.
std::vector<SuiteResult> run_verification_suites(std::uint64_t seed,
                                                 std::ostream& log);

// Full CLI behaviour behind a testable interface: runs the configured
// experiment (writing the CSV artifact, partial tables included) or the
// verification suites, prints a summary, and returns the process exit
// status: 0 iff every enabled check passed.
int run(const ExperimentConfig& config, std::ostream& out);

} // namespace wick
