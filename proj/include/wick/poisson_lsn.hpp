#pragma once

#include <vector>

#include "wick/chaos.hpp"
#include "wick/gaussian_llt.hpp" // DensityValidationError, MollifiedDensity
#include "wick/records.hpp"
#include "wick/schedule.hpp"

namespace wick {

// Probability mass function with finite support {0, ..., K}.
class FinitePmf {
public:
    explicit FinitePmf(std::vector<double> probs);

    static FinitePmf delta(int k);

    const std::vector<double>& probs() const { return probs_; }
    int max_support() const { return static_cast<int>(probs_.size()) - 1; }
    double mean() const;

private:
    std::vector<double> probs_;
};

// Binomial alpha-thinning: (T_alpha p)({k}) = sum_{m>=k} C(m,k) alpha^k
// (1-alpha)^{m-k} p({m}), evaluated exactly (Pascal binomials in extended
// precision; supports here stay far below the 64 where they stop being
// exact).
FinitePmf thin(double alpha, const FinitePmf& p);

// Radon-Nikodym density of p w.r.t. Poisson(a) as a chaos expansion:
// pointwise p_k/nu({k}) on the support and 0 beyond, projected through the
// requested degree.  The projection sum is finite and exact; gamma_0 = 1.
ChaosExpansion pmf_to_density(const FinitePmf& p, double a, int degree = 64);

// Mean-a condition of a Poisson-side density: gamma_0 = 1 and gamma_1 = 0
// (gamma_1 = (mean - a)/a), so f = 1 + sum_{j>=2} gamma_j c_j^a.
struct PoissonDensityInput {
    ChaosExpansion expansion;
};
PoissonDensityInput validate_poisson_density(const ChaosExpansion& f);

// Density of the mollified thinned sum: Gamma(1/(n + b_n)) f to the Wick
// power n.  The scalar-multiple notation for integer-valued variables is
// read as alpha-thinning throughout (see README); the mollifier U
// contributes the factor Gamma(b_n/(n+b_n)) 1 = 1.
MollifiedDensity mollified_thinned_sum_density(const PoissonDensityInput& f,
                                               int n, double b_n, int d_cap);

// sum_{k<=K} |g(k) - 1| nu({k}) with K from poisson_support_bound at the
// given tail tolerance for the working degree.
double l1_distance_to_one_poisson(const ChaosExpansion& g,
                                  double tail_tol = 1e-14);

// n (b_n + 1)^{-2} sqrt(sum_{j>=2} a^j j! gamma_j^2).
double theoretical_bound_poisson(const PoissonDensityInput& f, int n, double b_n);

std::vector<ConvergenceRecord> run_lsn_experiment(
    const PoissonDensityInput& f, const SequenceSchedule& schedule,
    const std::vector<int>& n_list, int d_cap,
    const ExperimentTolerances& tol = {});

} // namespace wick
