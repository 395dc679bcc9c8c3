#pragma once

#include <functional>
#include <vector>

#include "wick/hermite.hpp"
#include "wick/measure.hpp"

namespace wick {

// Truncated chaos expansion f = sum_{j=0}^{D} gamma_j b_j over the monic
// orthogonal basis of its reference measure (Hermite h_j for the Gaussian,
// Charlier c_j^a for Poisson(a)).  Coefficients are stored monic; all
// numerics run on the orthonormal rescaling gammahat_j = gamma_j sqrt(w_j),
// w_j the basis norm squared, to keep magnitudes representable at high
// degree.  The degree is a truncation bound; trailing zeros are legal.
class ChaosExpansion {
public:
    ChaosExpansion(Measure measure, std::vector<double> coeffs,
                   bool density_flag = false);

    static ChaosExpansion constant(Measure measure, double value);

    const Measure& measure() const { return measure_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double coeff(int j) const;

    // gammahat_j = gamma_j * sqrt(w_j); underflows to 0 rather than throwing.
    std::vector<double> normalized_coeffs() const;

    // Marked as a probability density w.r.t. the reference measure
    // (gamma_0 = 1, nonnegative reconstruction).  Set by the validators.
    bool is_density() const { return density_flag_; }
    ChaosExpansion as_density() const;

    // Pointwise reconstruction.  Gaussian measure only.
    double operator()(double x) const;

    // Reconstruction at the integer points 0..kmax.  Poisson measure only.
    std::vector<double> values_on_support(int kmax) const;

private:
    Measure measure_;
    std::vector<double> coeffs_;
    bool density_flag_;
};

// Projection onto the basis through degree D.
// Gaussian: gamma_j = (1/j!) * integral of f h_j dmu by the given rule.
ChaosExpansion project(const std::function<double(double)>& f, int degree,
                       const QuadratureRule& rule);
// Poisson: gamma_j = (1/(a^j j!)) * sum_{k<=kmax} f(k) c_j^a(k) nu({k}).
ChaosExpansion project(const std::function<double(int)>& f, int degree,
                       const Measure& poisson_measure, int kmax);

// Second quantization Gamma(lambda): degree-j coefficient scaled by lambda^j.
// Algebraically defined for |lambda| <= 1; probabilistic thinning callers
// restrict to [0, 1] themselves.
ChaosExpansion second_quantization(double lambda, const ChaosExpansion& f);

// Wick product: Cauchy product of coefficient sequences, degree adds.
ChaosExpansion wick_product(const ChaosExpansion& f, const ChaosExpansion& g);

// Wick power with truncation at degree d_cap.  truncated_l2_mass_sq is the
// accumulated sum_{j>d_cap} w_j gamma_j^2 over all dropped coefficients,
// computed incrementally factor by factor.  Throws when the dropped L2 norm
// exceeds 1e-10 of the retained one.
struct WickPowerResult {
    ChaosExpansion value;
    double truncated_l2_mass_sq;
};
WickPowerResult wick_power(const ChaosExpansion& f, int n, int d_cap);

// sqrt(sum_j w_j gamma_j^2).
double l2_norm(const ChaosExpansion& f);

// (integral |f|^p dmeasure)^{1/p}; Gaussian by Gauss-Hermite quadrature of
// the given order (0 = automatic), Poisson by summation over the truncated
// support.  p must be >= 1 and finite.
double lp_norm(const ChaosExpansion& f, double p, int quad_order = 0);

// Exponent/coefficient balance data for the Wick-Young inequality
//   |Gamma(alpha_1) f_1 <> ... <> Gamma(alpha_n) f_n|_r <= prod |f_i|_{p_i}.
// Gaussian constraint: sum alpha_i^2 = 1 and sum alpha_i^2/(p_i - 1) =
// 1/(r - 1), terms read as 0 at p_i = infinity.  Poisson constraint:
// alpha_i in [0,1], sum alpha_i = 1, p_1 = ... = p_n = r.
struct YoungConfig {
    std::vector<double> alphas;
    std::vector<double> exponents; // may contain infinity
    double r = 2.0;
};

struct YoungCheckResult {
    double lhs;
    double rhs;
    bool holds;
};

// Validates the config against the measure of fs, evaluates both sides, and
// reports lhs <= rhs + tol.
YoungCheckResult young_check(const std::vector<ChaosExpansion>& fs,
                             const YoungConfig& cfg, double tol = 1e-9);

} // namespace wick
