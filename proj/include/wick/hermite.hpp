#pragma once

#include <cstddef>
#include <vector>

namespace wick {

// Monic probabilists' Hermite polynomials h_n, orthogonal for the standard
// Gaussian measure with <h_n, h_n> = n!.  Recurrence:
//   h_0 = 1,  h_1 = x,  h_{n+1}(x) = x h_n(x) - n h_{n-1}(x).
// Evaluation is done on the orthonormal rescaling hhat_n = h_n / sqrt(n!),
// whose recurrence keeps values O(1) on the oscillatory range; raw h_n(x)
// overflows double near n = 170.
double hermite_monic(int n, double x);

// hhat_0(x) .. hhat_n(x).
std::vector<double> hermite_normalized_all(int n, double x);

double hermite_normalized(int n, double x);

// sum_j coeffs[j] hhat_j(x) with the recurrence carried in two scalars, so a
// grid scan costs no allocation per point.  coeffs must be nonempty.
double hermite_normalized_series(const std::vector<double>& coeffs, double x);

// Gauss-Hermite rule of given order for the weight e^{-x^2/2}/sqrt(2 pi):
// the nodes are the roots of hhat_order, bracketed by interlacing with the
// roots one degree down and polished by safeguarded Newton; the weight at
// node x_i is 1 / (order * hhat_{order-1}(x_i)^2).  Nodes and weights are
// symmetrized so the rule is exactly even.  Integrates polynomials of degree
// <= 2*order - 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule gauss_hermite_rule(int order);

} // namespace wick
