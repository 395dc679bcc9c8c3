#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wick/chaos.hpp"
#include "wick/records.hpp"
#include "wick/schedule.hpp"

namespace wick {

// Violated condition of a density hypothesis, with the measured value.
struct DensityViolation {
    std::string condition;
    double measured;
};

class DensityValidationError : public std::runtime_error {
public:
    DensityValidationError(const std::string& what,
                           std::vector<DensityViolation> violations)
        : std::runtime_error(what), violations_(std::move(violations)) {}
    const std::vector<DensityViolation>& violations() const { return violations_; }

private:
    std::vector<DensityViolation> violations_;
};

// A density w.r.t. the standard Gaussian measure with zero mean and unit
// variance: gamma_0 = 1, gamma_1 = 0, gamma_2 = 0 (so f = 1 + sum_{k>=3}
// gamma_k h_k), nonnegative on the verification grid [-12, 12].
struct GaussianDensityInput {
    ChaosExpansion expansion;
};

// Checks every condition and reports all violations at once.
GaussianDensityInput validate_gaussian_density(const ChaosExpansion& f);

// Density of the mollified normalized sum: Gamma(1/sqrt(n + b_n)) f raised
// to the Wick power n (the two orders of operations agree and are tested).
struct MollifiedDensity {
    ChaosExpansion density;
    double truncation_mass; // dropped sum of w_j gamma_j^2 past d_cap
};
MollifiedDensity mollified_sum_density(const GaussianDensityInput& f, int n,
                                       double b_n, int d_cap);

struct L1Options {
    int quad_order = 0;            // 0: max(40, 4*degree + 8)
    double grid_radius = 12.0;
    int trapezoid_points = 100000;
    double cross_check_tol = 5e-3;
    double tail_required = 1e-12;
};

// All three ingredients of the distance: the Gauss-Hermite value (returned
// by l1_distance_to_one), the dense trapezoid cross-check, and the proven
// bound on the mass outside the grid.
struct L1Breakdown {
    double quadrature;
    double trapezoid;
    double tail_bound;
};

L1Breakdown l1_distance_breakdown(const ChaosExpansion& g,
                                  const L1Options& opts = {});

// |g - 1| integrated against the Gaussian measure.  Throws when the two
// rules disagree beyond opts.cross_check_tol (insufficient order) or the
// off-grid tail bound exceeds opts.tail_required.
double l1_distance_to_one(const ChaosExpansion& g, const L1Options& opts = {});

// n (b_n + 1)^{-3/2} sqrt(sum_{k>=3} k! gamma_k^2).
double theoretical_bound_gaussian(const GaussianDensityInput& f, int n, double b_n);

std::vector<ConvergenceRecord> run_llt_experiment(
    const GaussianDensityInput& f, const SequenceSchedule& schedule,
    const std::vector<int>& n_list, int d_cap,
    const ExperimentTolerances& tol = {});

} // namespace wick
