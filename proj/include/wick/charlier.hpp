#pragma once

#include <vector>

namespace wick {

// Monic Charlier polynomials c_n^a, orthogonal for the Poisson(a) measure
// with <c_n, c_n> = a^n n!.  Recurrence:
//   c_0 = 1,  c_1 = x - a,  c_{n+1}(x) = (x - n - a) c_n(x) - n a c_{n-1}(x).
//
// Evaluation uses the orthonormal rescaling chat_n = c_n / sqrt(a^n n!).
// Running the degree recurrence upward at a fixed small integer argument is
// unstable: there chat_n decays like sqrt(a^n/n!) while the recurrence's
// dominant solution grows, so rounding noise takes over around degree 30.
// The duality c_n^a(k) = (-a)^{n-k} c_k^a(n) (n, k nonnegative integers)
// maps every such evaluation to one with degree <= argument, which is the
// stable direction; chat_values_at_integers applies it automatically.
double charlier_monic(int n, double a, double x);

// chat_0(x) .. chat_n(x) by the raw upward recurrence; only safe for
// x >= n - O(1) or small n.  Exposed for the stable-region evaluations and
// for tests of the duality path against it.
std::vector<double> charlier_normalized_raw(int n, double a, double x);

// M[j][k] = chat_j(k) for j = 0..degree, k = 0..kmax, stable at all (j, k).
std::vector<std::vector<double>> charlier_normalized_table(int degree, double a,
                                                           int kmax);

// Poisson(a) point masses nu({0}) .. nu({kmax}), computed in log scale.
std::vector<double> poisson_pmf(double a, int kmax);

// Smallest K with sum_{k>K} (1+k)^{2 degree} nu({k}) < tail_tol, the support
// truncation used by the discrete L^1 and norm sums.  Throws if no K up to
// the hard cap of 10^4 works (tolerance unreachable).
int poisson_support_bound(double a, int degree, double tail_tol);

} // namespace wick
