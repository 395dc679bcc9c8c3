#include "wick/charlier.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace wick {

namespace {

std::string format_tol(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void require_intensity(double a, const char* fn) {
    if (!(a > 0.0))
        throw std::invalid_argument(std::string("In wick::") + fn +
                                    ": intensity must be positive, got " +
                                    std::to_string(a));
}

} // namespace

std::vector<double> charlier_normalized_raw(int n, double a, double x) {
    require_intensity(a, "charlier_normalized_raw");
    if (n < 0)
        throw std::invalid_argument(
            "In wick::charlier_normalized_raw: degree must be nonnegative, got " +
            std::to_string(n));
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    v[0] = 1.0;
    if (n >= 1) v[1] = (x - a) / std::sqrt(a);
    for (int j = 1; j < n; ++j)
        v[j + 1] = (x - j - a) * v[j] / std::sqrt(a * (j + 1.0)) -
                   std::sqrt(j / (j + 1.0)) * v[j - 1];
    return v;
}

double charlier_monic(int n, double a, double x) {
    std::vector<double> v = charlier_normalized_raw(n, a, x);
    return v.back() * std::exp(0.5 * (n * std::log(a) + std::lgamma(n + 1.0)));
}

std::vector<std::vector<double>> charlier_normalized_table(int degree, double a,
                                                           int kmax) {
    require_intensity(a, "charlier_normalized_table");
    if (degree < 0 || kmax < 0)
        throw std::invalid_argument(
            "In wick::charlier_normalized_table: degree and kmax must be "
            "nonnegative, got " +
            std::to_string(degree) + ", " + std::to_string(kmax));

    std::vector<std::vector<double>> m(
        static_cast<std::size_t>(degree) + 1,
        std::vector<double>(static_cast<std::size_t>(kmax) + 1, 0.0));

    // j <= k: upward degree recurrence at argument k (stable region).
    for (int k = 0; k <= kmax; ++k) {
        int top = std::min(degree, k);
        std::vector<double> col = charlier_normalized_raw(top, a, k);
        for (int j = 0; j <= top; ++j)
            m[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = col[static_cast<std::size_t>(j)];
    }

    // j > k: duality. chat_j(k) = (-1)^{j-k} chat_k(j) sqrt(a^{j-k} k!/j!).
    double log_a = std::log(a);
    for (int j = 1; j <= degree; ++j) {
        std::vector<double> row = charlier_normalized_raw(std::min(j - 1, kmax), a, j);
        for (int k = 0; k <= std::min(j - 1, kmax); ++k) {
            double scale = std::exp(0.5 * ((j - k) * log_a + std::lgamma(k + 1.0) -
                                           std::lgamma(j + 1.0)));
            double sign = ((j - k) % 2 == 0) ? 1.0 : -1.0;
            m[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                sign * row[static_cast<std::size_t>(k)] * scale;
        }
    }
    return m;
}

std::vector<double> poisson_pmf(double a, int kmax) {
    require_intensity(a, "poisson_pmf");
    std::vector<double> nu(static_cast<std::size_t>(kmax) + 1);
    for (int k = 0; k <= kmax; ++k)
        nu[static_cast<std::size_t>(k)] =
            std::exp(k * std::log(a) - a - std::lgamma(k + 1.0));
    return nu;
}

int poisson_support_bound(double a, int degree, double tail_tol) {
    require_intensity(a, "poisson_support_bound");
    if (!(tail_tol > 0.0))
        throw std::invalid_argument(
            "In wick::poisson_support_bound: tail tolerance must be positive, got " +
            format_tol(tail_tol));
    constexpr int cap = 10000;

    // term_k = (1+k)^{2 degree} nu({k}) in log scale; the weighted tail is
    // summed backwards in extended precision from a point where it is
    // provably negligible.
    std::vector<double> log_term;
    double log_tol = std::log(tail_tol);
    for (int k = 0;; ++k) {
        double lt = 2.0 * degree * std::log1p(static_cast<double>(k)) +
                    k * std::log(a) - a - std::lgamma(k + 1.0);
        log_term.push_back(lt);
        if (k > 2.0 * degree * std::max(1.0, a) + 10.0 && lt < log_tol - 14.0)
            break;
        if (k >= cap)
            throw std::runtime_error(
                "In wick::poisson_support_bound: tail tolerance " +
                format_tol(tail_tol) + " not reached within support cap " +
                std::to_string(cap));
    }
    long double tail = 0.0L;
    for (std::size_t i = log_term.size(); i-- > 0;) {
        tail += std::exp(static_cast<long double>(log_term[i]));
        if (tail >= static_cast<long double>(tail_tol))
            return static_cast<int>(i);
    }
    return 0;
}

} // namespace wick
