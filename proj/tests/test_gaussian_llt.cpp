#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "wick/gaussian_llt.hpp"

using namespace wick;

namespace {

ChaosExpansion canonical() {
    return ChaosExpansion(Measure::gaussian(), {1.0, 0.0, 0.0, 0.0, 0.1});
}

}  // namespace

TEST_CASE("density validation accepts the flat and canonical densities") {
    GaussianDensityInput one = validate_gaussian_density(
        ChaosExpansion::constant(Measure::gaussian(), 1.0));
    CHECK(one.expansion.is_density());

    GaussianDensityInput f = validate_gaussian_density(canonical());
    CHECK(f.expansion.is_density());
    CHECK(f.expansion.coeff(4) == doctest::Approx(0.1));
}

TEST_CASE("density validation reports each failed moment condition") {
    ChaosExpansion bad_mean(Measure::gaussian(), {1.0, 0.5});
    try {
        validate_gaussian_density(bad_mean);
        FAIL("expected a validation error");
    } catch (const DensityValidationError& e) {
        REQUIRE(e.violations().size() >= 1);
        bool found = false;
        for (const DensityViolation& v : e.violations())
            if (v.condition.find("gamma_1") != std::string::npos) {
                found = true;
                CHECK(v.measured == doctest::Approx(0.5));
            }
        CHECK(found);
    }

    ChaosExpansion all_wrong(Measure::gaussian(), {1.5, 0.2, 0.3, 0.0, 0.1});
    try {
        validate_gaussian_density(all_wrong);
        FAIL("expected a validation error");
    } catch (const DensityValidationError& e) {
        CHECK(e.violations().size() >= 3);
    }

    // 1 + 0.3 h_3 has the right moments but dips negative.
    ChaosExpansion negative(Measure::gaussian(), {1.0, 0.0, 0.0, 0.3});
    try {
        validate_gaussian_density(negative);
        FAIL("expected a validation error");
    } catch (const DensityValidationError& e) {
        bool found = false;
        for (const DensityViolation& v : e.violations())
            if (v.condition.find("nonnegative") != std::string::npos) found = true;
        CHECK(found);
    }

    CHECK_THROWS_AS(
        validate_gaussian_density(ChaosExpansion(Measure::poisson(1.0), {1.0})),
        std::invalid_argument);
}

TEST_CASE("mollified sum density: closed-form small cases") {
    GaussianDensityInput f = validate_gaussian_density(canonical());

    // n = 1, b = 0: lambda = 1, a single factor, so the density is f itself.
    MollifiedDensity same = mollified_sum_density(f, 1, 0.0, 16);
    CHECK(same.density.coeff(4) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(same.truncation_mass == 0.0);

    // The flat density is a fixed point for every (n, b).
    GaussianDensityInput one = validate_gaussian_density(
        ChaosExpansion::constant(Measure::gaussian(), 1.0));
    MollifiedDensity flat = mollified_sum_density(one, 7, 3.0, 16);
    CHECK(flat.density.coeff(0) == doctest::Approx(1.0));
    for (int j = 1; j <= flat.density.degree(); ++j)
        CHECK(flat.density.coeff(j) == 0.0);

    // n = 2, b = 0: lambda = 1/sqrt(2), Gamma scales gamma_4 to 0.025, and
    // the Wick square doubles the h_4 coefficient and squares it at h_8.
    MollifiedDensity pair = mollified_sum_density(f, 2, 0.0, 16);
    CHECK(pair.density.coeff(4) == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(pair.density.coeff(8) == doctest::Approx(6.25e-4).epsilon(1e-12));

    CHECK_THROWS_AS(mollified_sum_density(f, 0, 1.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(mollified_sum_density(f, 2, -1.0, 16), std::invalid_argument);
}

TEST_CASE("L1 distance of the flat density is zero") {
    ChaosExpansion one = ChaosExpansion::constant(Measure::gaussian(), 1.0);
    CHECK(l1_distance_to_one(one) == doctest::Approx(0.0));
}

TEST_CASE("L1 distance matches the closed form for a pure h_1 perturbation") {
    // E|0.3 h_1| = 0.3 E|X| = 0.3 sqrt(2/pi).
    double exact = 0.3 * 0.7978845608028654;
    ChaosExpansion g(Measure::gaussian(), {1.0, 0.3});
    L1Breakdown b = l1_distance_breakdown(g);
    CHECK(b.trapezoid == doctest::Approx(exact).epsilon(1e-6));
    // |g - 1| has a kink, so the polynomial rule converges slowly; it must
    // still sit within the cross-check tolerance of the dense value.
    CHECK(std::fabs(b.quadrature - exact) < 5e-3);
    CHECK(b.tail_bound < 1e-12);
    CHECK(l1_distance_to_one(g) == doctest::Approx(b.quadrature));
}

TEST_CASE("L1 distance is dominated by the L2 distance") {
    // The dense trapezoid value is the accurate one here: the polynomial
    // rule's kink error scales with the distance itself, and these random
    // perturbations are far larger than the experiment regime.
    std::mt19937_64 mt(4711);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<double> c = {1.0, u(mt), u(mt), u(mt), u(mt), u(mt)};
        ChaosExpansion g(Measure::gaussian(), c);
        long double l2_sq = 0.0L;
        for (int j = 1; j <= g.degree(); ++j) {
            double gh = g.coeff(j) * std::exp(0.5 * std::lgamma(j + 1.0));
            l2_sq += static_cast<long double>(gh) * gh;
        }
        L1Breakdown b = l1_distance_breakdown(g);
        CHECK(b.tail_bound < 1e-12);
        CHECK(b.trapezoid <= std::sqrt(static_cast<double>(l2_sq)) + 1e-9);
    }
}

TEST_CASE("L1 distance reports an unusable grid radius") {
    L1Options opts;
    opts.grid_radius = 4.0;
    CHECK_THROWS_WITH_AS(l1_distance_to_one(canonical(), opts),
                         doctest::Contains("grid radius"), std::runtime_error);
}

TEST_CASE("L1 distance reports an insufficient quadrature order") {
    ChaosExpansion g(Measure::gaussian(), {1.0, 0.3});
    L1Options opts;
    opts.cross_check_tol = 1e-12;
    CHECK_THROWS_WITH_AS(l1_distance_to_one(g, opts),
                         doctest::Contains("insufficient"), std::runtime_error);
}

TEST_CASE("theoretical bound: closed forms") {
    GaussianDensityInput one = validate_gaussian_density(
        ChaosExpansion::constant(Measure::gaussian(), 1.0));
    CHECK(theoretical_bound_gaussian(one, 16, 10.0) == doctest::Approx(0.0));

    GaussianDensityInput f = validate_gaussian_density(canonical());
    // 16 * 11^{-3/2} * sqrt(0.24)
    CHECK(theoretical_bound_gaussian(f, 16, 10.0) ==
          doctest::Approx(0.2148506024366535).epsilon(1e-12));
    // The series under the square root is ||f||_2^2 - 1 for a density with
    // no coefficients at degrees 1 and 2.
    double series = l2_norm(f.expansion) * l2_norm(f.expansion) - 1.0;
    CHECK(theoretical_bound_gaussian(f, 5, 2.0) ==
          doctest::Approx(5.0 * std::pow(3.0, -1.5) * std::sqrt(series))
              .epsilon(1e-12));
}

TEST_CASE("experiment on the flat density measures zero everywhere") {
    GaussianDensityInput one = validate_gaussian_density(
        ChaosExpansion::constant(Measure::gaussian(), 1.0));
    std::vector<ConvergenceRecord> rows = run_llt_experiment(
        one, SequenceSchedule::power_rule(0.8), {4, 16}, 32);
    REQUIRE(rows.size() == 2);
    for (const ConvergenceRecord& r : rows) {
        CHECK(r.note.empty());
        CHECK(r.measured_l1 < 1e-12);
        CHECK(r.bound_satisfied);
        CHECK(r.truncation_mass == 0.0);
    }
}

TEST_CASE("experiment rows for the canonical density match frozen values") {
    GaussianDensityInput f = validate_gaussian_density(canonical());
    std::vector<ConvergenceRecord> rows = run_llt_experiment(
        f, SequenceSchedule::power_rule(0.8), {256, 4, 1024, 16, 64}, 64);
    REQUIRE(rows.size() == 5);

    const int expected_n[5] = {4, 16, 64, 256, 1024};
    const double expected_b[5] = {4.0, 10.0, 28.0, 85.0, 257.0};
    const double expected_l1[5] = {1.867457872360e-2, 6.785689642034e-3,
                                   2.140872807273e-3, 6.205629901835e-4,
                                   1.756626227865e-4};
    for (int i = 0; i < 5; ++i) {
        const ConvergenceRecord& r = rows[static_cast<std::size_t>(i)];
        CHECK(r.n == expected_n[i]);
        CHECK(r.b_n == doctest::Approx(expected_b[i]));
        CHECK(r.measured_l1 ==
              doctest::Approx(expected_l1[i]).epsilon(1e-7));
        CHECK(r.theoretical_bound ==
              doctest::Approx(r.n * std::pow(r.b_n + 1.0, -1.5) * std::sqrt(0.24))
                  .epsilon(1e-12));
        CHECK(r.bound_satisfied);
        CHECK(r.truncation_mass < 1e-12);
        CHECK(r.note.empty());
        CHECK_FALSE(r.mc_estimate.has_value());
    }
    CHECK(rows.back().measured_l1 < rows.front().measured_l1);
}

TEST_CASE("experiment flags schedules that break the required trends") {
    GaussianDensityInput f = validate_gaussian_density(canonical());

    std::vector<ConvergenceRecord> too_big = run_llt_experiment(
        f, SequenceSchedule::custom([](int n) { return static_cast<double>(n); }),
        {4, 16, 64}, 32);
    for (const ConvergenceRecord& r : too_big)
        CHECK(r.note.find("b_n/n -> 0") != std::string::npos);

    std::vector<ConvergenceRecord> too_small = run_llt_experiment(
        f, SequenceSchedule::custom([](int) { return 0.0; }), {4, 16, 64}, 32);
    for (const ConvergenceRecord& r : too_small)
        CHECK(r.note.find("n^(2/3)") != std::string::npos);
}

TEST_CASE("schedule checks accept and refuse the right power exponents") {
    ScheduleCheck bad = check_schedule(SequenceSchedule::power_rule(0.6),
                                       ScheduleMode::gaussian, {4, 16});
    CHECK_FALSE(bad.ok);
    CHECK(bad.message.find("n^(2/3)") != std::string::npos);

    ScheduleCheck fine = check_schedule(SequenceSchedule::power_rule(0.6),
                                        ScheduleMode::poisson, {4, 16});
    CHECK(fine.ok);

    CHECK_THROWS_AS(SequenceSchedule::power_rule(1.2), std::invalid_argument);
    CHECK_THROWS_AS(SequenceSchedule::power_rule(0.0), std::invalid_argument);
}

TEST_CASE("one-step contraction controls the n-fold distance (telescoping)") {
    // Trapezoid values again: at b = 0 the distances sit well outside the
    // regime the default cross-check tolerance is calibrated for.
    GaussianDensityInput f = validate_gaussian_density(canonical());
    auto dist = [](const ChaosExpansion& g) {
        L1Breakdown b = l1_distance_breakdown(g);
        REQUIRE(b.tail_bound < 1e-12);
        return b.trapezoid;
    };
    for (int n : {2, 3, 4}) {
        for (double b : {0.0, 1.0, 4.0}) {
            double whole = dist(mollified_sum_density(f, n, b, 64).density);
            ChaosExpansion one_factor = second_quantization(
                1.0 / std::sqrt(1.0 + b), f.expansion);
            double step = dist(one_factor);
            CHECK(whole <= n * step + 1e-6);
        }
    }
}

TEST_CASE("second quantization commutes with Wick powers") {
    ChaosExpansion f = canonical();
    for (double lambda : {0.3, 0.8}) {
        for (int n : {2, 3}) {
            ChaosExpansion a =
                second_quantization(lambda, wick_power(f, n, 64).value);
            ChaosExpansion b =
                wick_power(second_quantization(lambda, f), n, 64).value;
            REQUIRE(a.degree() == b.degree());
            for (int j = 0; j <= a.degree(); ++j)
                CHECK(a.coeff(j) == doctest::Approx(b.coeff(j)).epsilon(1e-12));
        }
    }
}
