#pragma once

#include <cstdint>
#include <vector>

#include "wick/chaos.hpp"
#include "wick/gaussian_llt.hpp"
#include "wick/poisson_lsn.hpp"

namespace wick {

// Law of the independent sum: (p * q)_k = sum_i p_i q_{k-i}.
FinitePmf convolve_pmfs(const FinitePmf& p, const FinitePmf& q);

// Ground-truth law of T_{alpha_1} X_1 + ... + T_{alpha_n} X_n by folding
// exact thinning and convolution; alphas must sum to 1.
FinitePmf exact_thinned_sum_law(const std::vector<FinitePmf>& pmfs,
                                const std::vector<double>& alphas);

// Total variation distance between two finite pmfs (supports padded).
double total_variation(const FinitePmf& p, const FinitePmf& q);

// Lebesgue density of alpha_1 X_1 + alpha_2 X_2 (alpha_1^2 + alpha_2^2 = 1)
// computed by direct numerical convolution of the scaled factor densities
// f_i(x/alpha_i) phi(x/alpha_i)/alpha_i on a uniform grid.
struct GridDensity {
    double radius = 12.0;
    double step = 0.0;
    std::vector<double> values; // Lebesgue density at -radius + i*step
};

struct GridParams {
    double radius = 12.0;
    int points = (1 << 14) + 1; // odd count keeps 0 and +/-radius on the grid
};

GridDensity grid_convolution_density(const GaussianDensityInput& f1,
                                     const GaussianDensityInput& f2,
                                     double alpha1, double alpha2,
                                     const GridParams& params = {});

// L1(mu) distance between the grid-convolution law and a chaos-side density:
// trapezoid of |grid_lebesgue - g*phi| over the grid.
double l1_mu_distance(const GridDensity& grid, const ChaosExpansion& g);

// Monte Carlo cross-checks.  Gaussian: samples the mollified normalized sum,
// kernel-density-estimates its Lebesgue density (Silverman bandwidth,
// binned), and integrates |estimate - phi|; Poisson: samples the thinned
// sum and accumulates the empirical-vs-Poisson pmf deviation, which equals
// the L1(nu) distance of the empirical density to 1.  std_error comes from
// a 16-fold multinomial bootstrap over the binned counts.
struct MonteCarloResult {
    double estimate;
    double std_error;
};

MonteCarloResult monte_carlo_l1_gaussian(const GaussianDensityInput& f, int n,
                                         double b_n, int sample_count,
                                         std::uint64_t seed);

MonteCarloResult monte_carlo_l1_poisson(const FinitePmf& p, double a, int n,
                                        double b_n, int sample_count,
                                        std::uint64_t seed);

} // namespace wick
