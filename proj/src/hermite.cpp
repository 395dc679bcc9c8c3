#include "wick/hermite.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace wick {

std::vector<double> hermite_normalized_all(int n, double x) {
    if (n < 0)
        throw std::invalid_argument(
            "In wick::hermite_normalized_all: degree must be nonnegative, got " +
            std::to_string(n));
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    v[0] = 1.0;
    if (n >= 1) v[1] = x;
    for (int k = 1; k < n; ++k)
        v[k + 1] = (x * v[k] - std::sqrt(static_cast<double>(k)) * v[k - 1]) /
                   std::sqrt(static_cast<double>(k) + 1.0);
    return v;
}

double hermite_normalized(int n, double x) {
    return hermite_normalized_all(n, x).back();
}

namespace {

// sqrt(k) and 1/sqrt(k) for k = 0..n, grown on demand.  The series below runs
// one serial recurrence per grid point; keeping these factors out of that
// dependency chain removes a sqrt and a division from every term.
struct RecurrenceFactors {
    std::vector<double> root;
    std::vector<double> inv_root;
    void ensure(std::size_t n) {
        for (std::size_t k = root.size(); k <= n; ++k) {
            double r = std::sqrt(static_cast<double>(k));
            root.push_back(r);
            inv_root.push_back(k == 0 ? 0.0 : 1.0 / r);
        }
    }
};

} // namespace

double hermite_normalized_series(const std::vector<double>& coeffs, double x) {
    if (coeffs.empty())
        throw std::invalid_argument(
            "In wick::hermite_normalized_series: coefficient list is empty");
    thread_local RecurrenceFactors factors;
    factors.ensure(coeffs.size() - 1);
    const double* s = factors.root.data();
    const double* si = factors.inv_root.data();
    long double acc = coeffs[0];
    double prev = 1.0;
    double cur = x;
    if (coeffs.size() > 1) acc += static_cast<long double>(coeffs[1]) * cur;
    for (std::size_t k = 2; k < coeffs.size(); ++k) {
        double next = (x * cur - s[k - 1] * prev) * si[k];
        prev = cur;
        cur = next;
        acc += static_cast<long double>(coeffs[k]) * cur;
    }
    return static_cast<double>(acc);
}

double hermite_monic(int n, double x) {
    return hermite_normalized(n, x) * std::exp(0.5 * std::lgamma(n + 1.0));
}

namespace {

// hhat_n and its derivative via hhat_n' = sqrt(n) hhat_{n-1}.
void hermite_value_derivative(int n, double x, double& val, double& der) {
    double prev = 0.0;
    double cur = 1.0;
    for (int k = 1; k <= n; ++k) {
        double next = (x * cur - std::sqrt(static_cast<double>(k) - 1.0) * prev) /
                      std::sqrt(static_cast<double>(k));
        prev = cur;
        cur = next;
    }
    val = cur;
    der = n > 0 ? std::sqrt(static_cast<double>(n)) * prev : 0.0;
}

// One root of hhat_n inside (lo, hi), where the sign change is guaranteed by
// root interlacing.  Newton steps falling outside the bracket fall back to
// bisection.
double polish_root(int n, double lo, double hi) {
    double flo, fhi, dummy;
    hermite_value_derivative(n, lo, flo, dummy);
    hermite_value_derivative(n, hi, fhi, dummy);
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double f, df;
        hermite_value_derivative(n, x, f, df);
        if (f == 0.0) return x;
        if ((f > 0.0) == (flo > 0.0)) lo = x; else hi = x;
        double step = df != 0.0 ? x - f / df : lo - 1.0;
        if (step > lo && step < hi)
            x = step;
        else
            x = 0.5 * (lo + hi);
        if (hi - lo < 1e-15 * (1.0 + std::abs(x))) break;
    }
    return x;
}

} // namespace

namespace {

QuadratureRule build_gauss_hermite_rule(int order) {
    // Grow the root set degree by degree; the roots of hhat_{n-1} interlace
    // those of hhat_n, and sqrt(4n + 2) bounds them all.
    std::vector<double> roots{0.0};
    for (int n = 2; n <= order; ++n) {
        double outer = std::sqrt(4.0 * n + 2.0);
        std::vector<double> brackets;
        brackets.reserve(roots.size() + 2);
        brackets.push_back(-outer);
        brackets.insert(brackets.end(), roots.begin(), roots.end());
        brackets.push_back(outer);
        std::vector<double> next(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            next[static_cast<std::size_t>(i)] =
                polish_root(n, brackets[static_cast<std::size_t>(i)],
                            brackets[static_cast<std::size_t>(i) + 1]);
        // Exact +/- symmetry; center root of odd degrees pinned to 0.
        for (int i = 0, j = n - 1; i < j; ++i, --j) {
            double s = 0.5 * (next[static_cast<std::size_t>(i)] -
                              next[static_cast<std::size_t>(j)]);
            next[static_cast<std::size_t>(i)] = s;
            next[static_cast<std::size_t>(j)] = -s;
        }
        if (n % 2 == 1) next[static_cast<std::size_t>(n / 2)] = 0.0;
        roots = std::move(next);
    }

    QuadratureRule rule;
    rule.nodes = roots;
    rule.weights.resize(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        double hprev = hermite_normalized(order - 1, roots[i]);
        rule.weights[i] = 1.0 / (order * hprev * hprev);
    }
    for (std::size_t i = 0, j = roots.size() - 1; i < j; ++i, --j) {
        double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.weights[i] = w;
        rule.weights[j] = w;
    }
    return rule;
}

} // namespace

QuadratureRule gauss_hermite_rule(int order) {
    if (order < 1)
        throw std::invalid_argument(
            "In wick::gauss_hermite_rule: order must be at least 1, got " +
            std::to_string(order));

    // Root polishing is the expensive part and the rule is a pure function of
    // the order, so completed rules are kept for the life of the process.
    static std::mutex cache_mutex;
    static std::map<int, QuadratureRule> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(order);
        if (it != cache.end()) return it->second;
    }
    QuadratureRule rule = build_gauss_hermite_rule(order);
    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.emplace(order, std::move(rule)).first->second;
}

} // namespace wick
