#include "wick/gaussian_llt.hpp"

#include <algorithm>
#include <cmath>

namespace wick {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;

double std_normal_density(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

} // namespace

GaussianDensityInput validate_gaussian_density(const ChaosExpansion& f) {
    std::vector<DensityViolation> bad;
    if (!f.measure().is_gaussian())
        throw std::invalid_argument(
            "In wick::validate_gaussian_density: Gaussian measure required");

    constexpr double tol = 1e-12;
    if (std::fabs(f.coeff(0) - 1.0) > tol)
        bad.push_back({"gamma_0 = 1 (unit mass)", f.coeff(0)});
    if (std::fabs(f.coeff(1)) > tol)
        bad.push_back({"gamma_1 = 0 (zero mean)", f.coeff(1)});
    if (std::fabs(f.coeff(2)) > tol)
        bad.push_back({"gamma_2 = 0 (unit variance)", f.coeff(2)});

    double min_val = 0.0;
    constexpr int grid_points = 4001;
    constexpr double radius = 12.0;
    std::vector<double> ghat = f.normalized_coeffs();
    for (int i = 0; i < grid_points; ++i) {
        double x = -radius + 2.0 * radius * i / (grid_points - 1);
        min_val = std::min(min_val, hermite_normalized_series(ghat, x));
    }
    if (min_val < -1e-9)
        bad.push_back({"nonnegative on the verification grid", min_val});

    double l2 = l2_norm(f);
    if (!std::isfinite(l2)) bad.push_back({"finite L2 norm", l2});

    if (!bad.empty()) {
        std::string msg = "In wick::validate_gaussian_density: invalid density:";
        for (const DensityViolation& v : bad)
            msg += " [" + v.condition + ", measured " + std::to_string(v.measured) + "]";
        throw DensityValidationError(msg, std::move(bad));
    }
    return GaussianDensityInput{f.as_density()};
}

MollifiedDensity mollified_sum_density(const GaussianDensityInput& f, int n,
                                       double b_n, int d_cap) {
    if (n < 1)
        throw std::invalid_argument(
            "In wick::mollified_sum_density: n must be positive, got " +
            std::to_string(n));
    if (b_n < 0.0)
        throw std::invalid_argument(
            "In wick::mollified_sum_density: b_n must be nonnegative, got " +
            std::to_string(b_n));
    double lambda = 1.0 / std::sqrt(static_cast<double>(n) + b_n);
    WickPowerResult p = wick_power(second_quantization(lambda, f.expansion), n, d_cap);
    return MollifiedDensity{p.value, p.truncated_l2_mass_sq};
}

namespace {

// Gaussian-measure mass of |x| > radius carried by each normalized basis
// polynomial, overestimated two independent ways and combined per degree:
//   crude:   |h_j(x)| <= 2^j |x|^j for x^2 >= j/2, integrated by parts;
//   Cramer:  |hhat_j(x)| <= 1.086435 e^{x^2/4} for all j, x.
// The crude bound wins at low degree, Cramer's at high degree where x =
// radius sits inside the root range.
double tail_bound_outside(const std::vector<double>& ghat, double radius) {
    int degree = static_cast<int>(ghat.size()) - 1;
    // I_j = int_R^inf x^j phi(x) dx: I_j = R^{j-1} phi(R) + (j-1) I_{j-2}.
    std::vector<double> upper_moment(static_cast<std::size_t>(std::max(degree, 1)) + 1);
    double phi_r = std_normal_density(radius);
    upper_moment[0] = phi_r / radius; // Mills-ratio overestimate of the tail
    upper_moment[1] = phi_r;
    for (int j = 2; j <= degree; ++j)
        upper_moment[static_cast<std::size_t>(j)] =
            std::pow(radius, j - 1) * phi_r +
            (j - 1) * upper_moment[static_cast<std::size_t>(j - 2)];

    constexpr double cramer_const = 1.086435;
    // int_{|x|>R} e^{x^2/4} phi(x) dx <= (2/sqrt(2 pi)) * 2 e^{-R^2/4} / R.
    double cramer_tail_integral =
        cramer_const * (2.0 / kSqrt2Pi) * 2.0 * std::exp(-0.25 * radius * radius) / radius;

    double total = 0.0;
    for (int j = 0; j <= degree; ++j) {
        double g = std::fabs(ghat[static_cast<std::size_t>(j)]);
        if (g == 0.0) continue;
        double crude = HUGE_VAL;
        if (radius * radius >= 0.5 * j && upper_moment[static_cast<std::size_t>(j)] > 0.0) {
            // gammahat_j hhat_j = gamma_j h_j with gamma_j = ghat_j/sqrt(j!).
            double log_term = j * std::log(2.0) +
                              std::log(2.0 * upper_moment[static_cast<std::size_t>(j)]) -
                              0.5 * std::lgamma(j + 1.0);
            crude = std::exp(log_term);
        }
        total += g * std::min(crude, cramer_tail_integral);
    }
    return total;
}

} // namespace

L1Breakdown l1_distance_breakdown(const ChaosExpansion& g, const L1Options& opts) {
    if (!g.measure().is_gaussian())
        throw std::invalid_argument(
            "In wick::l1_distance_breakdown: Gaussian expansion required");

    std::vector<double> diff = g.coeffs();
    diff[0] -= 1.0;
    ChaosExpansion gm1(Measure::gaussian(), std::move(diff));
    std::vector<double> ghat = gm1.normalized_coeffs();
    auto eval = [&](double x) { return hermite_normalized_series(ghat, x); };

    int order = opts.quad_order > 0 ? opts.quad_order : std::max(40, 4 * g.degree() + 8);
    QuadratureRule rule = gauss_hermite_rule(order);
    long double q = 0.0L;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        q += static_cast<long double>(rule.weights[i]) * std::fabs(eval(rule.nodes[i]));

    int pts = opts.trapezoid_points;
    double r = opts.grid_radius;
    double h = 2.0 * r / (pts - 1);
    long double t = 0.0L;
    for (int i = 0; i < pts; ++i) {
        double x = -r + h * i;
        double v = std::fabs(eval(x)) * std_normal_density(x);
        t += (i == 0 || i == pts - 1) ? 0.5L * v : static_cast<long double>(v);
    }
    t *= h;

    double tail = tail_bound_outside(ghat, r);
    return L1Breakdown{static_cast<double>(q), static_cast<double>(t), tail};
}

double l1_distance_to_one(const ChaosExpansion& g, const L1Options& opts) {
    L1Breakdown b = l1_distance_breakdown(g, opts);
    if (b.tail_bound > opts.tail_required)
        throw std::runtime_error(
            "In wick::l1_distance_to_one: off-grid tail bound " +
            std::to_string(b.tail_bound) + " exceeds the required " +
            std::to_string(opts.tail_required) +
            "; enlarge the grid radius");
    if (std::fabs(b.quadrature - b.trapezoid) > opts.cross_check_tol)
        throw std::runtime_error(
            "In wick::l1_distance_to_one: quadrature value " +
            std::to_string(b.quadrature) + " and trapezoid cross-check " +
            std::to_string(b.trapezoid) + " disagree beyond " +
            std::to_string(opts.cross_check_tol) +
            "; the quadrature order is insufficient");
    return b.quadrature;
}

double theoretical_bound_gaussian(const GaussianDensityInput& f, int n, double b_n) {
    long double series = 0.0L;
    std::vector<double> ghat = f.expansion.normalized_coeffs();
    for (std::size_t k = 3; k < ghat.size(); ++k)
        series += static_cast<long double>(ghat[k]) * ghat[k];
    return n * std::pow(b_n + 1.0, -1.5) *
           static_cast<double>(std::sqrt(series));
}

std::vector<ConvergenceRecord> run_llt_experiment(
    const GaussianDensityInput& f, const SequenceSchedule& schedule,
    const std::vector<int>& n_list, int d_cap, const ExperimentTolerances& tol) {
    std::vector<int> sorted = n_list;
    std::sort(sorted.begin(), sorted.end());

    ScheduleCheck sc = check_schedule(schedule, ScheduleMode::gaussian, sorted);

    std::vector<ConvergenceRecord> rows;
    rows.reserve(sorted.size());
    for (int n : sorted) {
        ConvergenceRecord rec;
        rec.n = n;
        if (!sc.ok) rec.note = sc.message;
        try {
            rec.b_n = schedule(n);
            MollifiedDensity g = mollified_sum_density(f, n, rec.b_n, d_cap);
            rec.truncation_mass = g.truncation_mass;
            L1Options opts;
            opts.cross_check_tol = tol.cross_check_tol;
            opts.quad_order = tol.quad_order;
            rec.measured_l1 = l1_distance_to_one(g.density, opts);
            rec.theoretical_bound = theoretical_bound_gaussian(f, n, rec.b_n);
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
