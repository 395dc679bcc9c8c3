#include "wick/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wick/charlier.hpp"

namespace wick {

namespace {

void require_same_measure(const ChaosExpansion& f, const ChaosExpansion& g,
                          const char* fn) {
    if (f.measure() != g.measure())
        throw std::invalid_argument(std::string("In wick::") + fn +
                                    ": operands use different reference measures");
}

void require_finite(const std::vector<double>& v, const char* fn) {
    for (double c : v)
        if (!std::isfinite(c))
            throw std::invalid_argument(std::string("In wick::") + fn +
                                        ": non-finite coefficient");
}

// Default support truncation for Poisson-side sums at the working degree.
int default_support(const Measure& m, int degree) {
    return poisson_support_bound(m.intensity(), degree, 1e-14);
}

} // namespace

ChaosExpansion::ChaosExpansion(Measure measure, std::vector<double> coeffs,
                               bool density_flag)
    : measure_(measure), coeffs_(std::move(coeffs)), density_flag_(density_flag) {
    if (coeffs_.empty())
        throw std::invalid_argument(
            "In wick::ChaosExpansion: coefficient vector must be nonempty");
    require_finite(coeffs_, "ChaosExpansion");
}

ChaosExpansion ChaosExpansion::constant(Measure measure, double value) {
    return ChaosExpansion(measure, {value});
}

double ChaosExpansion::coeff(int j) const {
    if (j < 0)
        throw std::invalid_argument("In wick::ChaosExpansion::coeff: negative degree");
    return j <= degree() ? coeffs_[static_cast<std::size_t>(j)] : 0.0;
}

std::vector<double> ChaosExpansion::normalized_coeffs() const {
    std::vector<double> out(coeffs_.size());
    for (int j = 0; j <= degree(); ++j) {
        double g = coeffs_[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(j)] =
            g == 0.0 ? 0.0 : g * std::exp(0.5 * measure_.log_weight(j));
    }
    require_finite(out, "ChaosExpansion::normalized_coeffs");
    return out;
}

ChaosExpansion ChaosExpansion::as_density() const {
    return ChaosExpansion(measure_, coeffs_, true);
}

double ChaosExpansion::operator()(double x) const {
    if (!measure_.is_gaussian())
        throw std::logic_error(
            "In wick::ChaosExpansion::operator(): pointwise real evaluation is "
            "Gaussian-only; use values_on_support for the Poisson basis");
    return hermite_normalized_series(normalized_coeffs(), x);
}

std::vector<double> ChaosExpansion::values_on_support(int kmax) const {
    if (!measure_.is_poisson())
        throw std::logic_error(
            "In wick::ChaosExpansion::values_on_support: Poisson measure required");
    std::vector<double> ghat = normalized_coeffs();
    std::vector<std::vector<double>> table =
        charlier_normalized_table(degree(), measure_.intensity(), kmax);
    std::vector<double> vals(static_cast<std::size_t>(kmax) + 1, 0.0);
    for (int k = 0; k <= kmax; ++k) {
        long double acc = 0.0L;
        for (std::size_t j = 0; j < ghat.size(); ++j)
            acc += static_cast<long double>(ghat[j]) *
                   table[j][static_cast<std::size_t>(k)];
        vals[static_cast<std::size_t>(k)] = static_cast<double>(acc);
    }
    return vals;
}

ChaosExpansion project(const std::function<double(double)>& f, int degree,
                       const QuadratureRule& rule) {
    if (degree < 0)
        throw std::invalid_argument("In wick::project: degree must be nonnegative");
    std::size_t n = rule.nodes.size();
    std::vector<long double> ghat(static_cast<std::size_t>(degree) + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
        double fx = f(rule.nodes[i]);
        if (!std::isfinite(fx))
            throw std::invalid_argument(
                "In wick::project: non-finite function value at node " +
                std::to_string(rule.nodes[i]));
        std::vector<double> h = hermite_normalized_all(degree, rule.nodes[i]);
        for (int j = 0; j <= degree; ++j)
            ghat[static_cast<std::size_t>(j)] +=
                static_cast<long double>(rule.weights[i]) * fx *
                h[static_cast<std::size_t>(j)];
    }
    Measure mu = Measure::gaussian();
    std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1);
    for (int j = 0; j <= degree; ++j)
        coeffs[static_cast<std::size_t>(j)] =
            static_cast<double>(ghat[static_cast<std::size_t>(j)]) *
            std::exp(-0.5 * mu.log_weight(j));
    return ChaosExpansion(mu, std::move(coeffs));
}

ChaosExpansion project(const std::function<double(int)>& f, int degree,
                       const Measure& poisson_measure, int kmax) {
    if (!poisson_measure.is_poisson())
        throw std::invalid_argument(
            "In wick::project: integer-argument projection needs a Poisson measure");
    if (degree < 0)
        throw std::invalid_argument("In wick::project: degree must be nonnegative");
    double a = poisson_measure.intensity();
    std::vector<double> nu = poisson_pmf(a, kmax);
    std::vector<std::vector<double>> table =
        charlier_normalized_table(degree, a, kmax);
    std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1);
    for (int j = 0; j <= degree; ++j) {
        long double acc = 0.0L;
        for (int k = 0; k <= kmax; ++k) {
            double fk = f(k);
            if (!std::isfinite(fk))
                throw std::invalid_argument(
                    "In wick::project: non-finite function value at k = " +
                    std::to_string(k));
            acc += static_cast<long double>(fk) *
                   table[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] *
                   nu[static_cast<std::size_t>(k)];
        }
        coeffs[static_cast<std::size_t>(j)] =
            static_cast<double>(acc) * std::exp(-0.5 * poisson_measure.log_weight(j));
    }
    return ChaosExpansion(poisson_measure, std::move(coeffs));
}

ChaosExpansion second_quantization(double lambda, const ChaosExpansion& f) {
    if (!(std::abs(lambda) <= 1.0))
        throw std::invalid_argument(
            "In wick::second_quantization: |lambda| must be <= 1, got " +
            std::to_string(lambda));
    std::vector<double> c = f.coeffs();
    double pw = 1.0;
    for (std::size_t j = 1; j < c.size(); ++j) {
        pw *= lambda;
        c[j] *= pw;
    }
    return ChaosExpansion(f.measure(), std::move(c), f.is_density());
}

ChaosExpansion wick_product(const ChaosExpansion& f, const ChaosExpansion& g) {
    require_same_measure(f, g, "wick_product");
    const std::vector<double>& a = f.coeffs();
    const std::vector<double>& b = g.coeffs();
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t j = 0; j < out.size(); ++j) {
        std::size_t lo = j >= b.size() ? j - b.size() + 1 : 0;
        std::size_t hi = std::min(j, a.size() - 1);
        long double acc = 0.0L;
        for (std::size_t i = lo; i <= hi; ++i)
            acc += static_cast<long double>(a[i]) * b[j - i];
        out[j] = static_cast<double>(acc);
    }
    return ChaosExpansion(f.measure(), std::move(out));
}

WickPowerResult wick_power(const ChaosExpansion& f, int n, int d_cap) {
    if (n < 0)
        throw std::invalid_argument(
            "In wick::wick_power: exponent must be nonnegative, got " +
            std::to_string(n));
    if (d_cap < 0)
        throw std::invalid_argument(
            "In wick::wick_power: truncation degree must be nonnegative, got " +
            std::to_string(d_cap));

    const Measure& m = f.measure();
    ChaosExpansion acc = ChaosExpansion::constant(m, 1.0);
    long double dropped_mass = 0.0L;
    for (int step = 0; step < n; ++step) {
        ChaosExpansion full = wick_product(acc, f);
        std::vector<double> c = full.coeffs();
        for (int j = d_cap + 1; j <= full.degree(); ++j) {
            double gj = c[static_cast<std::size_t>(j)];
            if (gj != 0.0)
                dropped_mass +=
                    std::exp(static_cast<long double>(m.log_weight(j)) +
                             2.0L * std::log(std::fabs(static_cast<long double>(gj))));
        }
        if (full.degree() > d_cap)
            c.resize(static_cast<std::size_t>(d_cap) + 1);
        acc = ChaosExpansion(m, std::move(c));
    }

    double mass_sq = static_cast<double>(dropped_mass);
    double retained = l2_norm(acc);
    if (std::sqrt(std::max(mass_sq, 0.0)) > 1e-10 * retained)
        throw std::runtime_error(
            "In wick::wick_power: truncation at degree " + std::to_string(d_cap) +
            " drops L2 mass " + std::to_string(std::sqrt(mass_sq)) +
            " exceeding 1e-10 of the retained norm " + std::to_string(retained));
    return WickPowerResult{acc, mass_sq};
}

double l2_norm(const ChaosExpansion& f) {
    std::vector<double> ghat = f.normalized_coeffs();
    long double s = 0.0L;
    for (double g : ghat) s += static_cast<long double>(g) * g;
    return static_cast<double>(std::sqrt(s));
}

double lp_norm(const ChaosExpansion& f, double p, int quad_order) {
    if (!(p >= 1.0))
        throw std::invalid_argument("In wick::lp_norm: exponent must be >= 1, got " +
                                    std::to_string(p));
    if (std::isinf(p))
        throw std::invalid_argument(
            "In wick::lp_norm: p = infinity has no quadrature meaning here; "
            "essential sup is not provided");
    if (f.measure().is_gaussian()) {
        int order = quad_order > 0 ? quad_order : std::max(40, 4 * f.degree() + 8);
        QuadratureRule rule = gauss_hermite_rule(order);
        std::vector<double> ghat = f.normalized_coeffs();
        long double acc = 0.0L;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            double v = hermite_normalized_series(ghat, rule.nodes[i]);
            acc += static_cast<long double>(rule.weights[i]) *
                   std::pow(std::fabs(v), p);
        }
        return static_cast<double>(std::pow(acc, 1.0L / p));
    }
    int kmax = default_support(f.measure(), f.degree());
    std::vector<double> nu = poisson_pmf(f.measure().intensity(), kmax);
    std::vector<double> vals = f.values_on_support(kmax);
    long double acc = 0.0L;
    for (int k = 0; k <= kmax; ++k)
        acc += static_cast<long double>(nu[static_cast<std::size_t>(k)]) *
               std::pow(std::fabs(vals[static_cast<std::size_t>(k)]), p);
    return static_cast<double>(std::pow(acc, 1.0L / p));
}

namespace {

void validate_young(const std::vector<ChaosExpansion>& fs, const YoungConfig& cfg) {
    if (fs.empty())
        throw std::invalid_argument("In wick::young_check: needs at least one factor");
    std::size_t n = fs.size();
    if (cfg.alphas.size() != n || cfg.exponents.size() != n)
        throw std::invalid_argument(
            "In wick::young_check: alphas/exponents length must match factor count");
    for (std::size_t i = 1; i < n; ++i) require_same_measure(fs[0], fs[i], "young_check");
    if (!(cfg.r >= 1.0))
        throw std::invalid_argument("In wick::young_check: r must be >= 1");
    for (double p : cfg.exponents)
        if (!(p >= 1.0))
            throw std::invalid_argument("In wick::young_check: exponents must be >= 1");

    constexpr double tol = 1e-9;
    if (fs[0].measure().is_gaussian()) {
        double s2 = 0.0;
        for (double al : cfg.alphas) s2 += al * al;
        if (std::fabs(s2 - 1.0) > tol)
            throw std::invalid_argument(
                "In wick::young_check: Gaussian mode needs sum alpha_i^2 = 1, got " +
                std::to_string(s2));
        // sum alpha_i^2/(p_i - 1) = 1/(r - 1) with 1/inf = 0 conventions.
        bool lhs_inf = false;
        double lhs = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double al = cfg.alphas[i], p = cfg.exponents[i];
            if (al == 0.0 || std::isinf(p)) continue;
            if (p == 1.0) { lhs_inf = true; break; }
            lhs += al * al / (p - 1.0);
        }
        bool rhs_inf = cfg.r == 1.0;
        double rhs = rhs_inf ? 0.0 : 1.0 / (cfg.r - 1.0);
        bool ok = lhs_inf ? rhs_inf : (!rhs_inf && std::fabs(lhs - rhs) <= tol);
        if (!ok)
            throw std::invalid_argument(
                "In wick::young_check: Gaussian exponent balance "
                "sum alpha_i^2/(p_i-1) = 1/(r-1) violated");
    } else {
        double s = 0.0;
        for (double al : cfg.alphas) {
            if (al < 0.0 || al > 1.0)
                throw std::invalid_argument(
                    "In wick::young_check: Poisson mode needs alpha_i in [0,1]");
            s += al;
        }
        if (std::fabs(s - 1.0) > tol)
            throw std::invalid_argument(
                "In wick::young_check: Poisson mode needs sum alpha_i = 1, got " +
                std::to_string(s));
        for (double p : cfg.exponents)
            if (p != cfg.r)
                throw std::invalid_argument(
                    "In wick::young_check: Poisson mode needs all p_i equal to r");
    }
}

} // namespace

YoungCheckResult young_check(const std::vector<ChaosExpansion>& fs,
                             const YoungConfig& cfg, double tol) {
    validate_young(fs, cfg);
    ChaosExpansion prod = second_quantization(cfg.alphas[0], fs[0]);
    for (std::size_t i = 1; i < fs.size(); ++i)
        prod = wick_product(prod, second_quantization(cfg.alphas[i], fs[i]));
    double lhs = lp_norm(prod, cfg.r);
    double rhs = 1.0;
    for (std::size_t i = 0; i < fs.size(); ++i)
        rhs *= lp_norm(fs[i], cfg.exponents[i]);
    return YoungCheckResult{lhs, rhs, lhs <= rhs + tol};
}

} // namespace wick
