#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "wick/chaos.hpp"

using namespace wick;

namespace {

ChaosExpansion gauss(std::vector<double> coeffs) {
    return ChaosExpansion(Measure::gaussian(), std::move(coeffs));
}

ChaosExpansion pois(double a, std::vector<double> coeffs) {
    return ChaosExpansion(Measure::poisson(a), std::move(coeffs));
}

}  // namespace

TEST_CASE("construction and basic accessors") {
    ChaosExpansion f = gauss({1.0, 0.0, 0.0, 0.0, 0.1});
    CHECK(f.degree() == 4);
    CHECK(f.coeff(0) == 1.0);
    CHECK(f.coeff(4) == 0.1);
    CHECK(f.coeff(17) == 0.0);  // beyond the stored degree

    ChaosExpansion one = ChaosExpansion::constant(Measure::gaussian(), 1.0);
    CHECK(one.degree() == 0);
    CHECK(one.coeff(0) == 1.0);

    CHECK_THROWS_AS(gauss({}), std::invalid_argument);
    CHECK_THROWS_AS(gauss({1.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("normalized coefficients carry the sqrt(j!) (and a^j) scaling") {
    ChaosExpansion f = gauss({1.0, 0.0, 0.0, 0.0, 0.1});
    std::vector<double> nc = f.normalized_coeffs();
    REQUIRE(nc.size() == 5);
    CHECK(nc[0] == doctest::Approx(1.0));
    CHECK(nc[4] == doctest::Approx(0.1 * std::sqrt(24.0)).epsilon(1e-14));

    ChaosExpansion g = pois(2.0, {1.0, 0.0, 0.5});
    std::vector<double> ng = g.normalized_coeffs();
    // ||c_2||^2 = a^2 * 2!, so the normalized coefficient is 0.5 * sqrt(8).
    CHECK(ng[2] == doctest::Approx(0.5 * std::sqrt(8.0)).epsilon(1e-14));
}

TEST_CASE("pointwise evaluation on the Gaussian side") {
    ChaosExpansion f = gauss({1.0, 0.0, 0.0, 0.0, 0.1});
    // 1 + 0.1 h_4(1) = 1 - 0.2
    CHECK(f(1.0) == doctest::Approx(0.8).epsilon(1e-14));
    ChaosExpansion p = pois(1.0, {1.0});
    CHECK_THROWS_AS(p(0.5), std::logic_error);
}

TEST_CASE("Poisson-side evaluation on the lattice") {
    ChaosExpansion p = pois(1.0, {1.0, 0.0, -0.25});
    std::vector<double> v = p.values_on_support(2);
    REQUIRE(v.size() == 3);
    // c_2^1 on {0,1,2} is {1,-1,-1}.
    CHECK(v[0] == doctest::Approx(1.0 - 0.25).epsilon(1e-12));
    CHECK(v[1] == doctest::Approx(1.0 + 0.25).epsilon(1e-12));
    CHECK(v[2] == doctest::Approx(1.0 + 0.25).epsilon(1e-12));
    ChaosExpansion f = gauss({1.0});
    CHECK_THROWS_AS(f.values_on_support(4), std::logic_error);
}

TEST_CASE("projection recovers Gaussian coefficients from point values") {
    ChaosExpansion f = gauss({1.0, 0.0, 0.0, 0.0, 0.1});
    QuadratureRule rule = gauss_hermite_rule(12);
    ChaosExpansion back =
        project([&](double x) { return f(x); }, 6, rule);
    CHECK(back.coeff(0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(back.coeff(4) == doctest::Approx(0.1).epsilon(1e-10));
    CHECK(std::fabs(back.coeff(1)) < 1e-10);
    CHECK(std::fabs(back.coeff(6)) < 1e-10);
    CHECK_THROWS_AS(
        project([](double) { return std::numeric_limits<double>::infinity(); },
                2, rule),
        std::invalid_argument);
}

TEST_CASE("projection recovers Poisson coefficients from lattice values") {
    double a = 1.0;
    // Density of the three-point law (0.25, 0.5, 0.25) w.r.t. Poisson(1).
    double e = std::exp(1.0);
    std::vector<double> vals = {0.25 * e, 0.5 * e, 0.5 * e};
    ChaosExpansion f = project(
        [&](int k) { return k <= 2 ? vals[static_cast<std::size_t>(k)] : 0.0; },
        3, Measure::poisson(a), 24);
    CHECK(f.coeff(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(f.coeff(1)) < 1e-12);
    CHECK(f.coeff(2) == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(f.coeff(3) == doctest::Approx(1.0 / 12).epsilon(1e-12));
}

TEST_CASE("second quantization scales coefficient j by lambda^j") {
    ChaosExpansion f = gauss({1.0, 0.0, 0.0, 0.2});
    ChaosExpansion g = second_quantization(0.5, f);
    CHECK(g.coeff(0) == doctest::Approx(1.0));
    CHECK(g.coeff(3) == doctest::Approx(0.025).epsilon(1e-15));

    ChaosExpansion id = second_quantization(1.0, f);
    for (int j = 0; j <= f.degree(); ++j)
        CHECK(id.coeff(j) == doctest::Approx(f.coeff(j)));

    ChaosExpansion squash = second_quantization(0.0, f);
    CHECK(squash.coeff(0) == doctest::Approx(1.0));
    for (int j = 1; j <= squash.degree(); ++j) CHECK(squash.coeff(j) == 0.0);

    CHECK_THROWS_AS(second_quantization(1.5, f), std::invalid_argument);
    CHECK_THROWS_AS(second_quantization(-1.0 - 1e-12, f), std::invalid_argument);
}

TEST_CASE("Wick product of first-order expansions") {
    ChaosExpansion f = gauss({1.0, 2.0});
    ChaosExpansion g = gauss({1.0, 3.0});
    ChaosExpansion fg = wick_product(f, g);
    REQUIRE(fg.degree() == 2);
    CHECK(fg.coeff(0) == doctest::Approx(1.0));
    CHECK(fg.coeff(1) == doctest::Approx(5.0));
    CHECK(fg.coeff(2) == doctest::Approx(6.0));

    ChaosExpansion one = ChaosExpansion::constant(Measure::gaussian(), 1.0);
    ChaosExpansion same = wick_product(f, one);
    CHECK(same.degree() == f.degree());
    CHECK(same.coeff(1) == doctest::Approx(2.0));

    CHECK_THROWS_AS(wick_product(f, pois(1.0, {1.0})), std::invalid_argument);
    CHECK_THROWS_AS(wick_product(f, pois(1.0, {1.0, 0.5})), std::invalid_argument);
}

TEST_CASE("Wick product is the same on both measures (coefficient algebra)") {
    ChaosExpansion f = pois(0.5, {1.0, 0.25, -0.1});
    ChaosExpansion g = pois(0.5, {1.0, -0.5});
    ChaosExpansion fg = wick_product(f, g);
    CHECK(fg.coeff(0) == doctest::Approx(1.0));
    CHECK(fg.coeff(1) == doctest::Approx(-0.25));
    CHECK(fg.coeff(2) == doctest::Approx(-0.225));
    CHECK(fg.coeff(3) == doctest::Approx(0.05));
}

TEST_CASE("Wick powers: trivial exponents and the binomial pattern") {
    ChaosExpansion f = gauss({1.0, 0.0, 0.0, 0.0, 0.1});
    WickPowerResult r0 = wick_power(f, 0, 16);
    CHECK(r0.value.degree() == 0);
    CHECK(r0.value.coeff(0) == doctest::Approx(1.0));
    CHECK(r0.truncated_l2_mass_sq == 0.0);

    WickPowerResult r1 = wick_power(f, 1, 16);
    CHECK(r1.value.coeff(4) == doctest::Approx(0.1));

    // (1 + eps h_4)^{wick n} has coefficient C(n,k) eps^k at degree 4k.
    WickPowerResult r5 = wick_power(f, 5, 64);
    CHECK(r5.truncated_l2_mass_sq == 0.0);
    double binom[6] = {1, 5, 10, 10, 5, 1};
    for (int k = 0; k <= 5; ++k)
        CHECK(r5.value.coeff(4 * k) ==
              doctest::Approx(binom[k] * std::pow(0.1, k)).epsilon(1e-12));
    for (int j = 0; j <= r5.value.degree(); ++j)
        if (j % 4 != 0) CHECK(std::fabs(r5.value.coeff(j)) < 1e-15);

    // Iterated products agree with the power helper.
    ChaosExpansion iter = f;
    for (int i = 1; i < 5; ++i) iter = wick_product(iter, f);
    for (int j = 0; j <= 20; ++j)
        CHECK(iter.coeff(j) == doctest::Approx(r5.value.coeff(j)).epsilon(1e-12));

    CHECK_THROWS_AS(wick_power(f, -1, 16), std::invalid_argument);
}

TEST_CASE("Wick powers refuse caps that throw away significant mass") {
    ChaosExpansion f = gauss({1.0, 1.0});
    CHECK_THROWS_AS(wick_power(f, 8, 4), std::runtime_error);

    // A cap that only sheds a negligible high tail is reported, not fatal:
    // (1 + 1e-7 h_4)^{wick 2} truncated at degree 7 drops only the degree-8
    // term, whose squared norm is 8! * 1e-28.
    ChaosExpansion tiny = gauss({1.0, 0.0, 0.0, 0.0, 1e-7});
    WickPowerResult r = wick_power(tiny, 2, 7);
    CHECK(r.value.degree() <= 7);
    CHECK(r.truncated_l2_mass_sq ==
          doctest::Approx(40320.0 * 1e-28).epsilon(1e-10));
}

TEST_CASE("L2 norms from coefficients match quadrature/summation values") {
    ChaosExpansion f = gauss({1.0, 0.0, 0.0, 0.0, 0.1});
    CHECK(l2_norm(f) == doctest::Approx(std::sqrt(1.24)).epsilon(1e-14));
    CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(1.24)).epsilon(1e-8));

    ChaosExpansion p = pois(1.0, {1.0, 0.0, -0.25, 1.0 / 12});
    double sum_sq = 1.0 + 0.0625 * 2.0 + (1.0 / 144) * 6.0;
    CHECK(l2_norm(p) == doctest::Approx(std::sqrt(sum_sq)).epsilon(1e-14));
    CHECK(lp_norm(p, 2.0) == doctest::Approx(std::sqrt(sum_sq)).epsilon(1e-8));
}

TEST_CASE("Lp norms: limits, orderings, and rejected exponents") {
    ChaosExpansion one = ChaosExpansion::constant(Measure::gaussian(), 1.0);
    CHECK(lp_norm(one, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(lp_norm(one, 3.0) == doctest::Approx(1.0).epsilon(1e-10));

    // For a density, the L1 norm is exactly the total mass 1.
    ChaosExpansion f = gauss({1.0, 0.0, 0.0, 0.0, 0.1});
    CHECK(lp_norm(f, 1.0) == doctest::Approx(1.0).epsilon(1e-8));

    std::mt19937_64 mt(91);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    for (int rep = 0; rep < 5; ++rep) {
        ChaosExpansion g = gauss({1.0, u(mt), u(mt), u(mt)});
        CHECK(lp_norm(g, 1.0) <= lp_norm(g, 2.0) + 1e-9);
        CHECK(lp_norm(g, 2.0) <= lp_norm(g, 4.0) + 1e-9);
    }

    CHECK_THROWS_AS(lp_norm(f, 0.5), std::invalid_argument);
    CHECK_THROWS_WITH_AS(lp_norm(f, std::numeric_limits<double>::infinity()),
                         doctest::Contains("essential sup"),
                         std::invalid_argument);
}

TEST_CASE("second quantization is an Lp contraction") {
    ChaosExpansion f = gauss({1.0, 0.4, -0.2, 0.1});
    ChaosExpansion p = pois(1.0, {1.0, 0.3, -0.2});
    for (double lambda : {0.0, 0.3, 0.9, 1.0}) {
        for (double pexp : {1.0, 2.0}) {
            CHECK(lp_norm(second_quantization(lambda, f), pexp) <=
                  lp_norm(f, pexp) + 1e-9);
            CHECK(lp_norm(second_quantization(lambda, p), pexp) <=
                  lp_norm(p, pexp) + 1e-9);
        }
    }
}

TEST_CASE("interpolation inequality: all-ones case is an identity") {
    ChaosExpansion one = ChaosExpansion::constant(Measure::gaussian(), 1.0);
    YoungConfig cfg;
    cfg.alphas = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    cfg.exponents = {3.0, 3.0};
    cfg.r = 3.0;
    YoungCheckResult res = young_check({one, one}, cfg);
    CHECK(res.lhs == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(res.rhs == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(res.holds);
}

TEST_CASE("interpolation inequality holds on the canonical Gaussian pair") {
    ChaosExpansion f = gauss({1.0, 0.0, 0.0, 0.0, 0.1});
    ChaosExpansion g = gauss({1.0, 0.0, 0.2});
    double s = 1.0 / std::sqrt(2.0);

    YoungConfig cfg;
    cfg.alphas = {s, s};
    cfg.exponents = {3.0, 3.0};
    cfg.r = 3.0;
    YoungCheckResult res = young_check({f, g}, cfg);
    CHECK(res.holds);
    CHECK(res.lhs <= res.rhs + 1e-9);

    // L1 form: both exponents 1, target r = 1.
    YoungConfig l1;
    l1.alphas = {s, s};
    l1.exponents = {1.0, 1.0};
    l1.r = 1.0;
    CHECK(young_check({f, g}, l1).holds);
}

TEST_CASE("interpolation inequality on the Poisson side with equal exponents") {
    ChaosExpansion f = pois(1.0, {1.0, 0.0, -0.25, 1.0 / 12});
    ChaosExpansion g = pois(1.0, {1.0, 0.2});
    for (double p : {1.0, 2.0}) {
        YoungConfig cfg;
        cfg.alphas = {0.3, 0.7};
        cfg.exponents = {p, p};
        cfg.r = p;
        YoungCheckResult res = young_check({f, g}, cfg);
        CHECK(res.holds);
        CHECK(res.lhs <= res.rhs + 1e-9);
    }
}

TEST_CASE("interpolation inequality rejects malformed configurations") {
    ChaosExpansion f = gauss({1.0, 0.1});
    ChaosExpansion g = gauss({1.0, -0.1});
    double s = 1.0 / std::sqrt(2.0);

    // Gaussian: weights must satisfy sum alpha^2 = 1.
    YoungConfig bad_alpha;
    bad_alpha.alphas = {0.5, 0.5};
    bad_alpha.exponents = {3.0, 3.0};
    bad_alpha.r = 3.0;
    CHECK_THROWS_AS(young_check({f, g}, bad_alpha), std::invalid_argument);

    // Gaussian: exponents {3,3} with equal weights force r = 3, not 2.
    YoungConfig bad_r;
    bad_r.alphas = {s, s};
    bad_r.exponents = {3.0, 3.0};
    bad_r.r = 2.0;
    CHECK_THROWS_AS(young_check({f, g}, bad_r), std::invalid_argument);

    YoungConfig count_mismatch;
    count_mismatch.alphas = {1.0};
    count_mismatch.exponents = {2.0, 2.0};
    count_mismatch.r = 2.0;
    CHECK_THROWS_AS(young_check({f, g}, count_mismatch), std::invalid_argument);

    // Poisson: weights live on the simplex and exponents must equal r.
    ChaosExpansion pf = pois(1.0, {1.0, 0.1});
    ChaosExpansion pg = pois(1.0, {1.0, -0.1});
    YoungConfig bad_simplex;
    bad_simplex.alphas = {0.6, 0.6};
    bad_simplex.exponents = {2.0, 2.0};
    bad_simplex.r = 2.0;
    CHECK_THROWS_AS(young_check({pf, pg}, bad_simplex), std::invalid_argument);

    YoungConfig bad_exp;
    bad_exp.alphas = {0.5, 0.5};
    bad_exp.exponents = {2.0, 3.0};
    bad_exp.r = 2.0;
    CHECK_THROWS_AS(young_check({pf, pg}, bad_exp), std::invalid_argument);

    YoungConfig neg_alpha;
    neg_alpha.alphas = {-0.5, 1.5};
    neg_alpha.exponents = {1.0, 1.0};
    neg_alpha.r = 1.0;
    CHECK_THROWS_AS(young_check({pf, pg}, neg_alpha), std::invalid_argument);
}

TEST_CASE("mixing densities through the scaled product keeps them densities") {
    ChaosExpansion f = gauss({1.0, 0.0, 0.0, 0.0, 0.1});
    ChaosExpansion g = gauss({1.0, 0.0, 0.2});
    double a1 = 0.6, a2 = 0.8;  // a1^2 + a2^2 = 1
    ChaosExpansion mixed =
        wick_product(second_quantization(a1, f), second_quantization(a2, g));
    CHECK(mixed.coeff(0) == doctest::Approx(1.0).epsilon(1e-14));
    double min_val = 1e300;
    for (int i = 0; i <= 4000; ++i) {
        double x = -10.0 + i * 20.0 / 4000;
        min_val = std::min(min_val, mixed(x));
    }
    CHECK(min_val >= -1e-9);
}
