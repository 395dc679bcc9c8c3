#include "wick/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "wick/charlier.hpp"
#include "wick/chaos.hpp"
#include "wick/hermite.hpp"
#include "wick/oracles.hpp"
#include "wick/schedule.hpp"

namespace wick {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string records_to_csv(const std::vector<ConvergenceRecord>& rows) {
    std::string out =
        "n,b_n,measured_l1,bound,bound_satisfied,mc_estimate,mc_std_error,"
        "trunc_mass\n";
    for (const ConvergenceRecord& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += fmt17(r.b_n);
        out += ',';
        out += fmt17(r.measured_l1);
        out += ',';
        out += fmt17(r.theoretical_bound);
        out += ',';
        out += r.bound_satisfied ? "true" : "false";
        out += ',';
        if (r.mc_estimate) out += fmt17(*r.mc_estimate);
        out += ',';
        if (r.mc_std_error) out += fmt17(*r.mc_std_error);
        out += ',';
        out += fmt17(r.truncation_mass);
        out += '\n';
    }
    return out;
}

GaussianDensityInput random_gaussian_density(Rng& rng, int max_degree) {
    if (max_degree < 3)
        throw std::invalid_argument(
            "In wick::random_gaussian_density: max_degree must be >= 3, got " +
            std::to_string(max_degree));
    std::vector<double> ghat(static_cast<std::size_t>(max_degree) + 1, 0.0);
    ghat[0] = 1.0;
    for (int k = 3; k <= max_degree; ++k)
        ghat[static_cast<std::size_t>(k)] =
            (2.0 * rng.uniform() - 1.0) * 0.4 / k;

    for (int attempt = 0; attempt < 80; ++attempt) {
        constexpr int kPoints = 24001;
        bool clears_floor = true;
        for (int i = 0; i < kPoints && clears_floor; ++i) {
            double x = -12.0 + 24.0 * i / (kPoints - 1);
            clears_floor = hermite_normalized_series(ghat, x) > 1e-4;
        }
        if (clears_floor) {
            std::vector<double> coeffs(static_cast<std::size_t>(max_degree) + 1, 0.0);
            coeffs[0] = 1.0;
            for (int k = 3; k <= max_degree; ++k)
                coeffs[static_cast<std::size_t>(k)] =
                    ghat[static_cast<std::size_t>(k)] *
                    std::exp(-0.5 * std::lgamma(k + 1.0));
            return validate_gaussian_density(ChaosExpansion(Measure::gaussian(), coeffs));
        }
        for (int k = 3; k <= max_degree; ++k) ghat[static_cast<std::size_t>(k)] *= 0.6;
    }
    throw std::runtime_error(
        "In wick::random_gaussian_density: could not reach a positive "
        "reconstruction");
}

FinitePmf random_pmf(Rng& rng, int max_support) {
    if (max_support < 0)
        throw std::invalid_argument(
            "In wick::random_pmf: max_support must be >= 0, got " +
            std::to_string(max_support));
    std::vector<double> probs(static_cast<std::size_t>(max_support) + 1);
    double s = 0.0;
    for (double& p : probs) {
        p = 0.05 + rng.uniform();
        s += p;
    }
    for (double& p : probs) p /= s;
    return FinitePmf(std::move(probs));
}

namespace {

void record_failure(SuiteResult& suite, const std::string& message) {
    ++suite.failures;
    if (suite.messages.size() < 5) suite.messages.push_back(message);
}

// Gram matrices of both orthonormal families against their measures.
SuiteResult suite_orthogonality() {
    SuiteResult suite;
    suite.name = "orthogonality";
    constexpr int kDeg = 12;
    constexpr double kTol = 1e-8;

    QuadratureRule rule = gauss_hermite_rule(2 * kDeg);
    std::vector<std::vector<double>> h(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        h[i] = hermite_normalized_all(kDeg, rule.nodes[i]);
    for (int j = 0; j <= kDeg; ++j)
        for (int k = 0; k <= kDeg; ++k) {
            long double g = 0.0L;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                g += static_cast<long double>(rule.weights[i]) *
                     h[i][static_cast<std::size_t>(j)] *
                     h[i][static_cast<std::size_t>(k)];
            ++suite.checks;
            double err = std::fabs(static_cast<double>(g) - (j == k ? 1.0 : 0.0));
            if (err > kTol)
                record_failure(suite, "Hermite Gram (" + std::to_string(j) + "," +
                                          std::to_string(k) + ") off by " +
                                          fmt6(err));
        }

    for (double a : {0.5, 1.0, 2.0}) {
        int kmax = poisson_support_bound(a, kDeg, 1e-15);
        std::vector<std::vector<double>> c =
            charlier_normalized_table(kDeg, a, kmax);
        std::vector<double> nu = poisson_pmf(a, kmax);
        for (int j = 0; j <= kDeg; ++j)
            for (int k = 0; k <= kDeg; ++k) {
                long double g = 0.0L;
                for (int x = 0; x <= kmax; ++x)
                    g += static_cast<long double>(nu[static_cast<std::size_t>(x)]) *
                         c[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)] *
                         c[static_cast<std::size_t>(k)][static_cast<std::size_t>(x)];
                ++suite.checks;
                double err =
                    std::fabs(static_cast<double>(g) - (j == k ? 1.0 : 0.0));
                if (err > kTol)
                    record_failure(suite, "Charlier a=" + fmt6(a) + " Gram (" +
                                              std::to_string(j) + "," +
                                              std::to_string(k) + ") off by " +
                                              fmt6(err));
            }
    }
    return suite;
}

double coeff_distance(const ChaosExpansion& x, const ChaosExpansion& y) {
    int d = std::max(x.degree(), y.degree());
    double worst = 0.0;
    for (int j = 0; j <= d; ++j)
        worst = std::max(worst, std::fabs(x.coeff(j) - y.coeff(j)));
    return worst;
}

ChaosExpansion random_expansion(Rng& rng, const Measure& m) {
    int degree = 3 + static_cast<int>(rng.below(6));
    std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1);
    for (double& c : coeffs) c = 2.0 * rng.uniform() - 1.0;
    return ChaosExpansion(m, std::move(coeffs));
}

// Second-quantization and Wick-product identities, coefficientwise.
SuiteResult suite_functoriality(std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "functoriality";
    constexpr double kTol = 1e-12;
    Rng rng(seed);
    const Measure measures[4] = {Measure::gaussian(), Measure::poisson(0.5),
                                 Measure::poisson(1.0), Measure::poisson(2.0)};
    for (int t = 0; t < 200; ++t) {
        const Measure& m = measures[t % 4];
        ChaosExpansion f = random_expansion(rng, m);
        ChaosExpansion g = random_expansion(rng, m);
        ChaosExpansion h = random_expansion(rng, m);
        double lam = 2.0 * rng.uniform() - 1.0;
        double rho = 2.0 * rng.uniform() - 1.0;

        struct Case {
            const char* what;
            double err;
        } cases[] = {
            {"Gamma(lambda) distributes over the Wick product",
             coeff_distance(second_quantization(lam, wick_product(f, g)),
                            wick_product(second_quantization(lam, f),
                                         second_quantization(lam, g)))},
            {"Gamma(lambda) Gamma(rho) = Gamma(lambda rho)",
             coeff_distance(second_quantization(lam, second_quantization(rho, f)),
                            second_quantization(lam * rho, f))},
            {"Gamma(lambda) fixes the constant 1",
             coeff_distance(second_quantization(lam, ChaosExpansion::constant(m, 1.0)),
                            ChaosExpansion::constant(m, 1.0))},
            {"Wick product commutes",
             coeff_distance(wick_product(f, g), wick_product(g, f))},
            {"Wick product associates",
             coeff_distance(wick_product(wick_product(f, g), h),
                            wick_product(f, wick_product(g, h)))},
        };
        for (const Case& c : cases) {
            ++suite.checks;
            if (c.err > kTol)
                record_failure(suite, std::string(c.what) + " violated by " +
                                          fmt6(c.err) + " (trial " +
                                          std::to_string(t) + ")");
        }
    }
    return suite;
}

SuiteResult suite_young(std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "young";
    Rng rng(seed);

    for (int t = 0; t < 150; ++t) {
        GaussianDensityInput f1 = random_gaussian_density(rng, 4 + static_cast<int>(rng.below(5)));
        GaussianDensityInput f2 = random_gaussian_density(rng, 4 + static_cast<int>(rng.below(5)));
        double theta = 0.2 + rng.uniform() * (1.5707963267948966 - 0.4);
        std::vector<ChaosExpansion> fs = {f1.expansion, f2.expansion};
        YoungConfig three{{std::cos(theta), std::sin(theta)}, {3.0, 3.0}, 3.0};
        YoungConfig l1{{std::cos(theta), std::sin(theta)}, {1.0, 1.0}, 1.0};
        for (const YoungConfig& cfg : {three, l1}) {
            YoungCheckResult r = young_check(fs, cfg);
            ++suite.checks;
            if (!r.holds)
                record_failure(suite,
                               "Gaussian case " + std::to_string(t) + " (r=" +
                                   fmt6(cfg.r) + "): lhs " + fmt17(r.lhs) +
                                   " > rhs " + fmt17(r.rhs));
        }
    }

    const double intensities[3] = {0.5, 1.0, 2.0};
    for (int t = 0; t < 150; ++t) {
        double a = intensities[t % 3];
        ChaosExpansion f1 =
            pmf_to_density(random_pmf(rng, 1 + static_cast<int>(rng.below(4))), a, 32);
        ChaosExpansion f2 =
            pmf_to_density(random_pmf(rng, 1 + static_cast<int>(rng.below(4))), a, 32);
        double u = 0.05 + 0.9 * rng.uniform();
        std::vector<ChaosExpansion> fs = {f1, f2};
        for (double p : {1.0, 2.0}) {
            YoungConfig cfg{{u, 1.0 - u}, {p, p}, p};
            YoungCheckResult r = young_check(fs, cfg);
            ++suite.checks;
            if (!r.holds)
                record_failure(suite, "Poisson case " + std::to_string(t) +
                                          " (p=" + fmt6(p) + "): lhs " +
                                          fmt17(r.lhs) + " > rhs " +
                                          fmt17(r.rhs));
        }
    }
    return suite;
}

// Total variation between the chaos-side law of the two-part thinned sum and
// the exact thin-and-convolve law.
double thinned_sum_tv(const FinitePmf& p, const FinitePmf& q, double alpha,
                      double a) {
    ChaosExpansion fp = pmf_to_density(p, a);
    ChaosExpansion fq = pmf_to_density(q, a);
    ChaosExpansion g = wick_product(second_quantization(alpha, fp),
                                    second_quantization(1.0 - alpha, fq));
    FinitePmf exact = exact_thinned_sum_law({p, q}, {alpha, 1.0 - alpha});
    int kmax = std::max(exact.max_support(),
                        poisson_support_bound(a, g.degree(), 1e-13));
    std::vector<double> nu = poisson_pmf(a, kmax);
    std::vector<double> vals = g.values_on_support(kmax);
    long double tv = 0.0L;
    for (int k = 0; k <= kmax; ++k) {
        double exact_k = k <= exact.max_support()
                             ? exact.probs()[static_cast<std::size_t>(k)]
                             : 0.0;
        tv += std::fabs(nu[static_cast<std::size_t>(k)] *
                            vals[static_cast<std::size_t>(k)] -
                        exact_k);
    }
    return 0.5 * static_cast<double>(tv);
}

SuiteResult suite_oracle_equivalence(std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "oracle-equivalence";
    Rng rng(seed);

    for (int t = 0; t < 20; ++t) {
        FinitePmf p = random_pmf(rng, 1 + static_cast<int>(rng.below(5)));
        FinitePmf q = random_pmf(rng, 1 + static_cast<int>(rng.below(5)));
        double a = 0.5 + 1.5 * rng.uniform();
        double alpha = 0.05 + 0.9 * rng.uniform();
        double tv = thinned_sum_tv(p, q, alpha, a);
        ++suite.checks;
        if (tv > 1e-10)
            record_failure(suite, "thinned-sum law trial " + std::to_string(t) +
                                      ": total variation " + fmt6(tv));
    }

    const double inv_sqrt2 = 0.7071067811865476;
    GaussianDensityInput canonical = validate_gaussian_density(
        ChaosExpansion(Measure::gaussian(), {1.0, 0.0, 0.0, 0.0, 0.1}));
    {
        GridDensity grid =
            grid_convolution_density(canonical, canonical, inv_sqrt2, inv_sqrt2);
        ChaosExpansion g =
            wick_product(second_quantization(inv_sqrt2, canonical.expansion),
                         second_quantization(inv_sqrt2, canonical.expansion));
        double d = l1_mu_distance(grid, g);
        ++suite.checks;
        if (d > 1e-3)
            record_failure(suite,
                           "canonical grid convolution disagrees by " + fmt6(d));
    }
    for (int t = 0; t < 2; ++t) {
        GaussianDensityInput f = random_gaussian_density(rng, 8);
        double theta = 0.4 + rng.uniform() * (1.5707963267948966 - 0.8);
        double a1 = std::cos(theta), a2 = std::sin(theta);
        GridDensity grid = grid_convolution_density(f, f, a1, a2);
        ChaosExpansion g = wick_product(second_quantization(a1, f.expansion),
                                        second_quantization(a2, f.expansion));
        double d = l1_mu_distance(grid, g);
        ++suite.checks;
        if (d > 5e-3)
            record_failure(suite, "random grid convolution trial " +
                                      std::to_string(t) + " disagrees by " +
                                      fmt6(d));
    }
    return suite;
}

void attach_monte_carlo(std::vector<ConvergenceRecord>& rows,
                        const ExperimentConfig& cfg,
                        const GaussianDensityInput* gaussian_f,
                        const FinitePmf* poisson_p) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ConvergenceRecord& rec = rows[i];
        if (!rec.note.empty()) continue;
        try {
            MonteCarloResult mc =
                gaussian_f
                    ? monte_carlo_l1_gaussian(*gaussian_f, rec.n, rec.b_n,
                                              cfg.mc_samples,
                                              derive_seed(cfg.seed, i))
                    : monte_carlo_l1_poisson(*poisson_p, cfg.a, rec.n, rec.b_n,
                                             cfg.mc_samples,
                                             derive_seed(cfg.seed, i));
            rec.mc_estimate = mc.estimate;
            rec.mc_std_error = mc.std_error;
        } catch (const std::exception& e) {
            rec.note = e.what();
        }
    }
}

} // namespace

std::vector<SuiteResult> run_verification_suites(std::uint64_t seed,
                                                 std::ostream& log) {
    std::vector<SuiteResult> suites;
    log << "running orthogonality suite\n";
    suites.push_back(suite_orthogonality());
    log << "running functoriality suite\n";
    suites.push_back(suite_functoriality(derive_seed(seed, 1)));
    log << "running young suite\n";
    suites.push_back(suite_young(derive_seed(seed, 2)));
    log << "running oracle-equivalence suite\n";
    suites.push_back(suite_oracle_equivalence(derive_seed(seed, 3)));
    return suites;
}

int run(const ExperimentConfig& cfg, std::ostream& os) {
    os << "configuration\n";
    {
        std::istringstream text(serialize_config(cfg));
        std::string line;
        while (std::getline(text, line)) os << "  " << line << "\n";
    }

    if (cfg.mode == RunMode::verify) {
        std::vector<SuiteResult> suites = run_verification_suites(cfg.seed, os);
        int checks = 0, failures = 0;
        os << "\nverification summary\n";
        for (const SuiteResult& s : suites) {
            os << "  " << s.name << ": " << s.checks << " checks, "
               << s.failures << " failures\n";
            for (const std::string& m : s.messages) os << "    " << m << "\n";
            checks += s.checks;
            failures += s.failures;
        }
        os << "RESULT: " << (failures == 0 ? "PASS" : "FAIL") << " (" << checks
           << " checks, " << failures << " failures)\n";
        return failures == 0 ? 0 : 1;
    }

    bool gaussian = cfg.mode == RunMode::gaussian_llt;
    std::vector<ConvergenceRecord> rows;
    std::vector<std::string> problems;
    try {
        DensitySpec spec = parse_density_spec(cfg.density);
        SequenceSchedule schedule = SequenceSchedule::power_rule(cfg.beta);
        ExperimentTolerances tol;
        tol.quad_order = cfg.quad_order;
        if (gaussian) {
            GaussianDensityInput f = validate_gaussian_density(
                ChaosExpansion(Measure::gaussian(), spec.values));
            rows = run_llt_experiment(f, schedule, cfg.n_list, cfg.d_cap, tol);
            if (cfg.mc_samples > 0) attach_monte_carlo(rows, cfg, &f, nullptr);
        } else {
            FinitePmf p(spec.values);
            PoissonDensityInput f =
                validate_poisson_density(pmf_to_density(p, cfg.a, cfg.d_cap));
            rows = run_lsn_experiment(f, schedule, cfg.n_list, cfg.d_cap, tol);
            if (cfg.mc_samples > 0) attach_monte_carlo(rows, cfg, nullptr, &p);
        }
    } catch (const std::exception& e) {
        problems.push_back(e.what());
    }

    // The table is written even when the run failed part-way through.
    {
        std::ofstream file(cfg.out, std::ios::binary);
        if (file) {
            file << records_to_csv(rows);
            os << "\nwrote " << rows.size() << " row"
               << (rows.size() == 1 ? "" : "s") << " to " << cfg.out << "\n";
        } else {
            problems.push_back("cannot write output file '" + cfg.out + "'");
        }
    }

    os << "\n" << to_string(cfg.mode) << " summary\n";
    bool all_ok = problems.empty() && !rows.empty();
    for (const ConvergenceRecord& rec : rows) {
        os << "  n=" << rec.n << " b_n=" << fmt6(rec.b_n) << " measured="
           << fmt6(rec.measured_l1) << " bound=" << fmt6(rec.theoretical_bound)
           << (rec.bound_satisfied ? " within bound" : " EXCEEDS bound");
        if (rec.mc_estimate)
            os << " mc=" << fmt6(*rec.mc_estimate) << " (se "
               << fmt6(*rec.mc_std_error) << ")";
        if (!rec.note.empty()) os << "  [" << rec.note << "]";
        os << "\n";
        if (!rec.bound_satisfied || !rec.note.empty()) all_ok = false;
    }
    if (rows.size() >= 2) {
        bool contracted = rows.back().measured_l1 < rows.front().measured_l1;
        os << "  contraction: measured(n=" << rows.back().n << ") "
           << (contracted ? "<" : ">=") << " measured(n=" << rows.front().n
           << ")\n";
        if (!contracted) all_ok = false;
    }
    if (cfg.mc_samples > 0) {
        // KDE smoothing biases the Gaussian-side estimate; allow for it.
        double bias_allowance = gaussian ? 0.01 : 0.0;
        for (const ConvergenceRecord& rec : rows) {
            if (!rec.mc_estimate) continue;
            double diff = std::fabs(*rec.mc_estimate - rec.measured_l1);
            double gate = std::max(3.0 * *rec.mc_std_error + bias_allowance, 0.02);
            bool ok = diff <= gate;
            os << "  mc agreement at n=" << rec.n << ": |" << fmt6(*rec.mc_estimate)
               << " - " << fmt6(rec.measured_l1) << "| = " << fmt6(diff)
               << (ok ? " within " : " EXCEEDS ") << fmt6(gate) << "\n";
            if (!ok) all_ok = false;
        }
    }
    for (const std::string& p : problems) os << "error: " << p << "\n";
    os << "RESULT: " << (all_ok ? "PASS" : "FAIL") << "\n";
    return all_ok ? 0 : 1;
}

} // namespace wick
