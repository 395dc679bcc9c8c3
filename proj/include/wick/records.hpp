#pragma once

#include <optional>
#include <string>
#include <vector>

namespace wick {

// One experiment row.  Rows carry their own failure notes so a bad n cannot
// abort the table.
struct ConvergenceRecord {
    int n = 0;
    double b_n = 0.0;
    double measured_l1 = 0.0;
    double theoretical_bound = 0.0;
    bool bound_satisfied = false;
    std::optional<double> mc_estimate;
    std::optional<double> mc_std_error;
    double truncation_mass = 0.0;
    std::string note; // empty when the row is clean
};

struct ExperimentTolerances {
    double bound_slack = 1e-6;       // measured <= bound * (1 + slack) + slack_abs
    double bound_slack_abs = 1e-8;
    double cross_check_tol = 5e-3;   // Gaussian quadrature vs trapezoid
    double poisson_tail_tol = 1e-14; // support truncation for discrete sums
    int quad_order = 0;              // Gaussian quadrature order; 0 picks one
};

} // namespace wick
