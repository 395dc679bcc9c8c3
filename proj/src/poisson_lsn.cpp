#include "wick/poisson_lsn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wick/charlier.hpp"

namespace wick {

FinitePmf::FinitePmf(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty())
        throw std::invalid_argument("In wick::FinitePmf: empty mass vector");
    long double total = 0.0L;
    for (double p : probs_) {
        if (!(p >= 0.0))
            throw std::invalid_argument(
                "In wick::FinitePmf: negative mass " + std::to_string(p));
        total += p;
    }
    if (std::fabs(static_cast<double>(total) - 1.0) > 1e-12)
        throw std::invalid_argument(
            "In wick::FinitePmf: masses sum to " +
            std::to_string(static_cast<double>(total)) + ", not 1");
}

FinitePmf FinitePmf::delta(int k) {
    if (k < 0)
        throw std::invalid_argument("In wick::FinitePmf::delta: negative point");
    std::vector<double> p(static_cast<std::size_t>(k) + 1, 0.0);
    p.back() = 1.0;
    return FinitePmf(std::move(p));
}

double FinitePmf::mean() const {
    long double m = 0.0L;
    for (std::size_t k = 0; k < probs_.size(); ++k)
        m += static_cast<long double>(k) * probs_[k];
    return static_cast<double>(m);
}

FinitePmf thin(double alpha, const FinitePmf& p) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument(
            "In wick::thin: alpha must lie in [0,1], got " + std::to_string(alpha));
    int m = p.max_support();

    // Pascal triangle in long double; exact through C(64, 32).
    std::vector<std::vector<long double>> binom(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) {
        binom[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1.0L);
        for (int j = 1; j < i; ++j)
            binom[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
    }

    std::vector<double> out(static_cast<std::size_t>(m) + 1, 0.0);
    for (int k = 0; k <= m; ++k) {
        long double acc = 0.0L;
        for (int mm = k; mm <= m; ++mm) {
            long double term =
                binom[static_cast<std::size_t>(mm)][static_cast<std::size_t>(k)];
            for (int i = 0; i < k; ++i) term *= alpha;
            for (int i = 0; i < mm - k; ++i) term *= (1.0L - alpha);
            acc += term * p.probs()[static_cast<std::size_t>(mm)];
        }
        out[static_cast<std::size_t>(k)] = static_cast<double>(acc);
    }
    return FinitePmf(std::move(out));
}

ChaosExpansion pmf_to_density(const FinitePmf& p, double a, int degree) {
    if (degree < 0)
        throw std::invalid_argument(
            "In wick::pmf_to_density: degree must be nonnegative");
    Measure nu = Measure::poisson(a);
    int m = p.max_support();

    // gammahat_j = sum_k p_k chat_j(k): the nu factors cancel against the
    // density's 1/nu, so the sum runs over the pmf support only.
    std::vector<std::vector<double>> table = charlier_normalized_table(degree, a, m);
    std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1);
    for (int j = 0; j <= degree; ++j) {
        long double acc = 0.0L;
        for (int k = 0; k <= m; ++k)
            acc += static_cast<long double>(p.probs()[static_cast<std::size_t>(k)]) *
                   table[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        coeffs[static_cast<std::size_t>(j)] =
            static_cast<double>(acc) * std::exp(-0.5 * nu.log_weight(j));
    }
    return ChaosExpansion(nu, std::move(coeffs), true);
}

PoissonDensityInput validate_poisson_density(const ChaosExpansion& f) {
    if (!f.measure().is_poisson())
        throw std::invalid_argument(
            "In wick::validate_poisson_density: Poisson measure required");
    std::vector<DensityViolation> bad;
    constexpr double tol = 1e-12;
    if (std::fabs(f.coeff(0) - 1.0) > tol)
        bad.push_back({"gamma_0 = 1 (unit mass)", f.coeff(0)});
    if (std::fabs(f.coeff(1)) > tol)
        bad.push_back({"gamma_1 = 0 (mean equal to the intensity)", f.coeff(1)});
    if (!bad.empty()) {
        std::string msg = "In wick::validate_poisson_density: invalid density:";
        for (const DensityViolation& v : bad)
            msg += " [" + v.condition + ", measured " + std::to_string(v.measured) + "]";
        throw DensityValidationError(msg, std::move(bad));
    }
    return PoissonDensityInput{f.as_density()};
}

MollifiedDensity mollified_thinned_sum_density(const PoissonDensityInput& f,
                                               int n, double b_n, int d_cap) {
    if (n < 1)
        throw std::invalid_argument(
            "In wick::mollified_thinned_sum_density: n must be positive, got " +
            std::to_string(n));
    if (b_n < 0.0)
        throw std::invalid_argument(
            "In wick::mollified_thinned_sum_density: b_n must be nonnegative, got " +
            std::to_string(b_n));
    double lambda = 1.0 / (static_cast<double>(n) + b_n);
    WickPowerResult p = wick_power(second_quantization(lambda, f.expansion), n, d_cap);
    return MollifiedDensity{p.value, p.truncated_l2_mass_sq};
}

double l1_distance_to_one_poisson(const ChaosExpansion& g, double tail_tol) {
    if (!g.measure().is_poisson())
        throw std::invalid_argument(
            "In wick::l1_distance_to_one_poisson: Poisson expansion required");
    double a = g.measure().intensity();
    int kmax = poisson_support_bound(a, g.degree(), tail_tol);
    std::vector<double> nu = poisson_pmf(a, kmax);
    std::vector<double> vals = g.values_on_support(kmax);
    long double acc = 0.0L;
    for (int k = 0; k <= kmax; ++k)
        acc += static_cast<long double>(nu[static_cast<std::size_t>(k)]) *
               std::fabs(vals[static_cast<std::size_t>(k)] - 1.0);
    return static_cast<double>(acc);
}

double theoretical_bound_poisson(const PoissonDensityInput& f, int n, double b_n) {
    std::vector<double> ghat = f.expansion.normalized_coeffs();
    long double series = 0.0L;
    for (std::size_t j = 2; j < ghat.size(); ++j)
        series += static_cast<long double>(ghat[j]) * ghat[j];
    return n * std::pow(b_n + 1.0, -2.0) * static_cast<double>(std::sqrt(series));
}

std::vector<ConvergenceRecord> run_lsn_experiment(
    const PoissonDensityInput& f, const SequenceSchedule& schedule,
    const std::vector<int>& n_list, int d_cap, const ExperimentTolerances& tol) {
    std::vector<int> sorted = n_list;
    std::sort(sorted.begin(), sorted.end());

    ScheduleCheck sc = check_schedule(schedule, ScheduleMode::poisson, sorted);

    std::vector<ConvergenceRecord> rows;
    rows.reserve(sorted.size());
    for (int n : sorted) {
        ConvergenceRecord rec;
        rec.n = n;
        if (!sc.ok) rec.note = sc.message;
        try {
            rec.b_n = schedule(n);
            MollifiedDensity g = mollified_thinned_sum_density(f, n, rec.b_n, d_cap);
            rec.truncation_mass = g.truncation_mass;
            rec.measured_l1 = l1_distance_to_one_poisson(g.density, tol.poisson_tail_tol);
            rec.theoretical_bound = theoretical_bound_poisson(f, n, rec.b_n);
            rec.bound_satisfied =
                rec.measured_l1 <=
                rec.theoretical_bound * (1.0 + tol.bound_slack) + tol.bound_slack_abs;
        } catch (const std::exception& e) {
            rec.note = rec.note.empty() ? e.what() : rec.note + "; " + e.what();
            rec.bound_satisfied = false;
        }
        rows.push_back(std::move(rec));
    }
    return rows;
}

} // namespace wick
