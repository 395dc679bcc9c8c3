#include "wick/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wick/charlier.hpp"
#include "wick/random.hpp"

namespace wick {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;
double std_normal_density(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

} // namespace

FinitePmf convolve_pmfs(const FinitePmf& p, const FinitePmf& q) {
    const std::vector<double>& a = p.probs();
    const std::vector<double>& b = q.probs();
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return FinitePmf(std::move(out));
}

FinitePmf exact_thinned_sum_law(const std::vector<FinitePmf>& pmfs,
                                const std::vector<double>& alphas) {
    if (pmfs.empty() || pmfs.size() != alphas.size())
        throw std::invalid_argument(
            "In wick::exact_thinned_sum_law: need matching nonempty pmf and "
            "alpha lists");
    double s = 0.0;
    for (double al : alphas) s += al;
    if (std::fabs(s - 1.0) > 1e-12)
        throw std::invalid_argument(
            "In wick::exact_thinned_sum_law: alphas sum to " + std::to_string(s) +
            ", not 1");
    FinitePmf acc = thin(alphas[0], pmfs[0]);
    for (std::size_t i = 1; i < pmfs.size(); ++i)
        acc = convolve_pmfs(acc, thin(alphas[i], pmfs[i]));
    return acc;
}

double total_variation(const FinitePmf& p, const FinitePmf& q) {
    std::size_t n = std::max(p.probs().size(), q.probs().size());
    long double tv = 0.0L;
    for (std::size_t k = 0; k < n; ++k) {
        double pk = k < p.probs().size() ? p.probs()[k] : 0.0;
        double qk = k < q.probs().size() ? q.probs()[k] : 0.0;
        tv += std::fabs(pk - qk);
    }
    return 0.5 * static_cast<double>(tv);
}

GridDensity grid_convolution_density(const GaussianDensityInput& f1,
                                     const GaussianDensityInput& f2,
                                     double alpha1, double alpha2,
                                     const GridParams& params) {
    if (std::fabs(alpha1 * alpha1 + alpha2 * alpha2 - 1.0) > 1e-12)
        throw std::invalid_argument(
            "In wick::grid_convolution_density: alpha_1^2 + alpha_2^2 must be 1");
    if (!(alpha1 > 0.0 && alpha2 > 0.0))
        throw std::invalid_argument(
            "In wick::grid_convolution_density: scaling factors must be positive");
    int n = params.points;
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument(
            "In wick::grid_convolution_density: point count must be odd and >= 3");
    double r = params.radius;
    double h = 2.0 * r / (n - 1);

    // Lebesgue densities of alpha_i X_i sampled on the grid.
    std::vector<double> g1(static_cast<std::size_t>(n)), g2(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = -r + h * i;
        g1[static_cast<std::size_t>(i)] =
            f1.expansion(x / alpha1) * std_normal_density(x / alpha1) / alpha1;
        g2[static_cast<std::size_t>(i)] =
            f2.expansion(x / alpha2) * std_normal_density(x / alpha2) / alpha2;
    }

    // Direct discrete convolution restricted to the output window [-r, r]:
    // (g1 * g2)(x_t) = h sum_i g1[i] g2[t + mid - i] with mid = (n-1)/2.
    int mid = (n - 1) / 2;
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int t = 0; t < n; ++t) {
        long double acc = 0.0L;
        int lo = std::max(0, t + mid - (n - 1));
        int hi = std::min(n - 1, t + mid);
        for (int i = lo; i <= hi; ++i)
            acc += static_cast<long double>(g1[static_cast<std::size_t>(i)]) *
                   g2[static_cast<std::size_t>(t + mid - i)];
        out[static_cast<std::size_t>(t)] = static_cast<double>(acc) * h;
    }

    GridDensity result;
    result.radius = r;
    result.step = h;
    result.values = std::move(out);

    long double mass = 0.0L;
    for (int i = 0; i < n; ++i) {
        double v = result.values[static_cast<std::size_t>(i)];
        mass += (i == 0 || i == n - 1) ? 0.5L * v : static_cast<long double>(v);
    }
    mass *= h;
    if (std::fabs(static_cast<double>(mass) - 1.0) > 1e-4)
        throw std::runtime_error(
            "In wick::grid_convolution_density: grid too coarse; mass deficit " +
            std::to_string(std::fabs(static_cast<double>(mass) - 1.0)));
    return result;
}

double l1_mu_distance(const GridDensity& grid, const ChaosExpansion& g) {
    if (!g.measure().is_gaussian())
        throw std::invalid_argument(
            "In wick::l1_mu_distance: Gaussian expansion required");
    int n = static_cast<int>(grid.values.size());
    long double acc = 0.0L;
    for (int i = 0; i < n; ++i) {
        double x = -grid.radius + grid.step * i;
        double v = std::fabs(grid.values[static_cast<std::size_t>(i)] -
                             g(x) * std_normal_density(x));
        acc += (i == 0 || i == n - 1) ? 0.5L * v : static_cast<long double>(v);
    }
    return static_cast<double>(acc) * grid.step;
}

namespace {

// Inverse-CDF sampler grid for a Gaussian-side density f phi.
struct InverseCdf {
    std::vector<double> xs;
    std::vector<double> cdf;
};

InverseCdf build_inverse_cdf(const ChaosExpansion& f, double radius, int points) {
    InverseCdf t;
    t.xs.resize(static_cast<std::size_t>(points));
    std::vector<double> dens(static_cast<std::size_t>(points));
    double h = 2.0 * radius / (points - 1);
    for (int i = 0; i < points; ++i) {
        double x = -radius + h * i;
        t.xs[static_cast<std::size_t>(i)] = x;
        dens[static_cast<std::size_t>(i)] =
            std::max(f(x) * std_normal_density(x), 0.0);
    }
    t.cdf.resize(static_cast<std::size_t>(points));
    t.cdf[0] = 0.0;
    long double acc = 0.0L;
    for (int i = 1; i < points; ++i) {
        acc += 0.5L * (dens[static_cast<std::size_t>(i)] +
                       dens[static_cast<std::size_t>(i - 1)]) *
               h;
        t.cdf[static_cast<std::size_t>(i)] = static_cast<double>(acc);
    }
    double total = t.cdf.back();
    for (double& c : t.cdf) c /= total;
    return t;
}

double sample_inverse_cdf(const InverseCdf& t, double u) {
    // Smallest i with cdf[i] >= u, then linear interpolation in the cell.
    std::size_t lo = 0, hi = t.cdf.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (t.cdf[mid] >= u)
            hi = mid;
        else
            lo = mid + 1;
    }
    if (lo == 0) return t.xs.front();
    double c0 = t.cdf[lo - 1], c1 = t.cdf[lo];
    double w = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
    return t.xs[lo - 1] + w * (t.xs[lo] - t.xs[lo - 1]);
}

double percentile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    double pos = q * (static_cast<double>(v.size()) - 1.0);
    std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= v.size()) return v.back();
    double w = pos - static_cast<double>(i);
    return v[i] * (1.0 - w) + v[i + 1] * w;
}

// L1 distance between the kernel-smoothed binned sample and phi.
double kde_l1_distance(const std::vector<double>& counts, double sample_count,
                       double radius, double bandwidth) {
    int m = static_cast<int>(counts.size());
    double h = 2.0 * radius / (m - 1);
    int kr = static_cast<int>(std::ceil(5.0 * bandwidth / h));
    std::vector<double> kernel(static_cast<std::size_t>(2 * kr) + 1);
    double ksum = 0.0;
    for (int i = -kr; i <= kr; ++i) {
        double v = std_normal_density(i * h / bandwidth);
        kernel[static_cast<std::size_t>(i + kr)] = v;
        ksum += v;
    }
    for (double& v : kernel) v /= ksum;

    long double acc = 0.0L;
    for (int i = 0; i < m; ++i) {
        long double sm = 0.0L;
        int lo = std::max(0, i - kr), hi = std::min(m - 1, i + kr);
        for (int j = lo; j <= hi; ++j)
            sm += static_cast<long double>(counts[static_cast<std::size_t>(j)]) *
                  kernel[static_cast<std::size_t>(i - j + kr)];
        double density = static_cast<double>(sm) / (sample_count * h);
        double x = -radius + h * i;
        double v = std::fabs(density - std_normal_density(x));
        acc += (i == 0 || i == m - 1) ? 0.5L * v : static_cast<long double>(v);
    }
    return static_cast<double>(acc) * h;
}

std::vector<double> multinomial_resample(Rng& rng, const std::vector<double>& counts,
                                         double total) {
    std::vector<double> cdf(counts.size());
    long double acc = 0.0L;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        acc += counts[i];
        cdf[i] = static_cast<double>(acc / total);
    }
    cdf.back() = 1.0;
    std::vector<double> out(counts.size(), 0.0);
    for (long i = 0; i < static_cast<long>(total); ++i)
        out[rng.index_from_cdf(cdf)] += 1.0;
    return out;
}

} // namespace

MonteCarloResult monte_carlo_l1_gaussian(const GaussianDensityInput& f, int n,
                                         double b_n, int sample_count,
                                         std::uint64_t seed) {
    if (sample_count < 1000)
        throw std::invalid_argument(
            "In wick::monte_carlo_l1_gaussian: need at least 1000 samples, got " +
            std::to_string(sample_count));
    Rng rng(seed);
    constexpr double radius = 12.0;
    InverseCdf sampler = build_inverse_cdf(f.expansion, radius, (1 << 16) + 1);

    int bins = (1 << 12) + 1;
    double h = 2.0 * radius / (bins - 1);
    std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
    std::vector<double> samples(static_cast<std::size_t>(sample_count));
    double scale_sum = 1.0 / std::sqrt(static_cast<double>(n) + b_n);
    double scale_moll = std::sqrt(b_n / (static_cast<double>(n) + b_n));
    for (int s = 0; s < sample_count; ++s) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += sample_inverse_cdf(sampler, rng.uniform());
        double w = acc * scale_sum + scale_moll * rng.normal();
        samples[static_cast<std::size_t>(s)] = w;
        int idx = static_cast<int>(std::floor((w + radius) / h + 0.5));
        idx = std::clamp(idx, 0, bins - 1);
        counts[static_cast<std::size_t>(idx)] += 1.0;
    }

    double sd;
    {
        long double m = 0.0L, m2 = 0.0L;
        for (double v : samples) m += v;
        m /= sample_count;
        for (double v : samples) m2 += (v - static_cast<double>(m)) * (v - static_cast<double>(m));
        sd = std::sqrt(static_cast<double>(m2) / (sample_count - 1));
    }
    double iqr = percentile(samples, 0.75) - percentile(samples, 0.25);
    double bandwidth = 0.9 * std::min(sd, iqr / 1.34) *
                       std::pow(static_cast<double>(sample_count), -0.2);

    double estimate = kde_l1_distance(counts, sample_count, radius, bandwidth);

    constexpr int kBootstrap = 16;
    std::vector<double> boot(kBootstrap);
    for (int b = 0; b < kBootstrap; ++b) {
        std::vector<double> rc = multinomial_resample(rng, counts, sample_count);
        boot[static_cast<std::size_t>(b)] =
            kde_l1_distance(rc, sample_count, radius, bandwidth);
    }
    double mean = 0.0;
    for (double v : boot) mean += v;
    mean /= kBootstrap;
    double var = 0.0;
    for (double v : boot) var += (v - mean) * (v - mean);
    return MonteCarloResult{estimate, std::sqrt(var / kBootstrap)};
}

MonteCarloResult monte_carlo_l1_poisson(const FinitePmf& p, double a, int n,
                                        double b_n, int sample_count,
                                        std::uint64_t seed) {
    if (sample_count < 1000)
        throw std::invalid_argument(
            "In wick::monte_carlo_l1_poisson: need at least 1000 samples, got " +
            std::to_string(sample_count));
    Rng rng(seed);

    std::vector<double> cdf(p.probs().size());
    long double acc = 0.0L;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        acc += p.probs()[i];
        cdf[i] = static_cast<double>(acc);
    }
    cdf.back() = 1.0;

    double alpha_inner = 1.0 / n;
    double alpha_outer = n / (static_cast<double>(n) + b_n);
    double alpha_moll = b_n / (static_cast<double>(n) + b_n);

    std::vector<double> counts;
    for (int s = 0; s < sample_count; ++s) {
        int inner_sum = 0;
        for (int i = 0; i < n; ++i) {
            int x = static_cast<int>(rng.index_from_cdf(cdf));
            inner_sum += rng.binomial(x, alpha_inner);
        }
        int w = rng.binomial(inner_sum, alpha_outer) +
                rng.binomial(rng.poisson(a), alpha_moll);
        if (w >= static_cast<int>(counts.size()))
            counts.resize(static_cast<std::size_t>(w) + 1, 0.0);
        counts[static_cast<std::size_t>(w)] += 1.0;
    }

    int kmax = std::max<int>(static_cast<int>(counts.size()) - 1,
                             poisson_support_bound(a, 0, 1e-12));
    std::vector<double> nu = poisson_pmf(a, kmax);
    auto empirical_l1 = [&](const std::vector<double>& c) {
        long double d = 0.0L;
        for (int k = 0; k <= kmax; ++k) {
            double ck = k < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(k)] : 0.0;
            d += std::fabs(ck / sample_count - nu[static_cast<std::size_t>(k)]);
        }
        return static_cast<double>(d);
    };
    double estimate = empirical_l1(counts);

    constexpr int kBootstrap = 16;
    std::vector<double> boot(kBootstrap);
    for (int b = 0; b < kBootstrap; ++b)
        boot[static_cast<std::size_t>(b)] =
            empirical_l1(multinomial_resample(rng, counts, sample_count));
    double mean = 0.0;
    for (double v : boot) mean += v;
    mean /= kBootstrap;
    double var = 0.0;
    for (double v : boot) var += (v - mean) * (v - mean);
    return MonteCarloResult{estimate, std::sqrt(var / kBootstrap)};
}

} // namespace wick
