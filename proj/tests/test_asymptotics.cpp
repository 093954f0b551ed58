#include <absq/asymptotics.hpp>
#include <absq/bigint.hpp>

#include "nested_quadrature.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace absq::asym;
using absq::BigCount;
using Catch::Approx;

namespace {

double ln_factorial_exact(int n) {
    BigCount f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return absq::log_big(f);
}

}  // namespace

TEST_CASE("log_stirling") {
    CHECK(log_stirling(1.0) == Approx(-1.0 + 0.5 * std::log(2.0 * std::numbers::pi)));
    CHECK(log_stirling(10.0) == Approx(15.09608).margin(1e-5));
    CHECK(ln_factorial_exact(10) == Approx(15.10441).margin(1e-5));
    CHECK_THROWS_AS(log_stirling(0.0), std::invalid_argument);
    CHECK_THROWS_AS(log_stirling(-3.0), std::invalid_argument);

    SECTION("relative error shrinks like 1/n") {
        for (int n : {10, 100, 1000}) {
            const double exact = ln_factorial_exact(n);
            const double rel = std::abs(std::expm1(log_stirling(n) - exact));
            CHECK(rel < 1.0 / (10.0 * n));
        }
    }
}

TEST_CASE("log_asymptotic") {
    CHECK(log_asymptotic(2, 4).value() == Approx(72.2).margin(0.1));
    CHECK(log_asymptotic(2, 7).value() == Approx(3493.9).margin(1.0));
    CHECK(log_asymptotic(2, 7).value() / 3432.0 == Approx(1.018).margin(0.002));
    CHECK(std::abs(272835.0 / log_asymptotic(3, 7).value() - 1.0) < 0.1);
    CHECK_THROWS_AS(log_asymptotic(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_asymptotic(3, 0), std::invalid_argument);
    // huge n stays finite in log-space
    CHECK(std::isfinite(log_asymptotic(3, 100000).log));
}

TEST_CASE("log_probability") {
    CHECK(log_probability(2, 100).value() == Approx(0.0564190).margin(1e-6));
    CHECK(log_probability(2, 2).value() == Approx(0.3989423).margin(1e-6));
    CHECK_THROWS_AS(log_probability(1, 5), std::invalid_argument);

    SECTION("equals log_asymptotic minus 2n ln k") {
        for (int k = 2; k <= 10; ++k) {
            for (std::int64_t n : {std::int64_t{1}, std::int64_t{17}, std::int64_t{1000},
                                   std::int64_t{1000000}}) {
                const double lhs = log_probability(k, n).log;
                const double big = log_asymptotic(k, n).log;
                const double rhs = big - 2.0 * double(n) * std::log(double(k));
                // ulp-scale: relative to the magnitudes being subtracted
                CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(big)));
            }
        }
    }
}

TEST_CASE("gaussian_1d closed form") {
    CHECK(gaussian_1d(1, 0, 0) == Approx(1.7724539).margin(1e-7));
    CHECK(gaussian_1d(2, 0, 0) == Approx(1.2533141).margin(1e-7));
    CHECK(gaussian_1d(1, 2, 1) == Approx(std::sqrt(std::numbers::pi)).margin(1e-12));
    CHECK_THROWS_AS(gaussian_1d(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_1d(-1, 0, 0), std::invalid_argument);
}

TEST_CASE("quadrature_1d on standard Gaussians") {
    CHECK(quadrature_1d([](double x) { return std::exp(-x * x); }, 1e-10, {1.0, 0.0, 1.0}) ==
          Approx(std::sqrt(std::numbers::pi)).margin(1e-10));
    CHECK(quadrature_1d([](double x) { return std::exp(-2 * x * x); }, 1e-10, {2.0, 0.0, 1.0}) ==
          Approx(std::sqrt(std::numbers::pi / 2)).margin(1e-10));
    CHECK(quadrature_1d([](double x) { return std::exp(-(x * x + 2 * x + 1)); }, 1e-9,
                        {1.0, -1.0, 1.0}) == Approx(gaussian_1d(1, 2, 1)).margin(1e-9));
    CHECK_THROWS_AS(quadrature_1d([](double) { return 1.0; }, 0.0), std::invalid_argument);
}

TEST_CASE("gaussian_1d agrees with quadrature on random coefficients") {
    std::mt19937 rng(2718);
    std::uniform_real_distribution<double> ua(0.1, 10.0);
    std::uniform_real_distribution<double> ubc(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double a = ua(rng);
        const double b = ubc(rng);
        const double c = ubc(rng);
        const GaussianTail tail{a, -b / (2 * a), std::exp(b * b / (4 * a) - c)};
        const double numeric = quadrature_1d(
            [&](double x) { return std::exp(-(a * x * x + b * x + c)); }, 1e-9, tail);
        CHECK(std::abs(numeric - gaussian_1d(a, b, c)) <= 1e-8);
    }
}

TEST_CASE("s_ml closed forms") {
    const std::vector<double> x1 = {1.0, -1.0};
    CHECK(s_ml(2, 0, x1) == Approx(2.0));
    CHECK(s_ml(3, 3, {}) == 0.0);
    const std::vector<double> x2 = {1.0};
    CHECK(s_ml(2, 1, x2) == Approx(1.5));
    CHECK_THROWS_AS(s_ml(3, 1, x2), std::invalid_argument);
    CHECK_THROWS_AS(s_ml(2, 3, x2), std::invalid_argument);
}

TEST_CASE("s_ml reduction steps verified by quadrature") {
    CHECK(s_ml_reduction_check(1, 1, {}, 1e-8));
    const std::vector<double> a = {0.5};
    CHECK(s_ml_reduction_check(2, 1, a, 1e-8));
    const std::vector<double> b = {-0.3};
    CHECK(s_ml_reduction_check(3, 2, b, 1e-8));

    SECTION("all (m, l) pairs, random points") {
        std::mt19937 rng(31);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int m = 1; m <= 4; ++m) {
            for (int l = 1; l <= m; ++l) {
                for (int rep = 0; rep < 20; ++rep) {
                    std::vector<double> rest(static_cast<std::size_t>(m - l));
                    for (auto& v : rest) v = u(rng);
                    CHECK(s_ml_reduction_check(m, l, rest, 1e-8));
                }
            }
        }
    }
}

TEST_CASE("gaussian_multi closed form and quadrature oracle") {
    CHECK(gaussian_multi(0) == Approx(1.0));
    CHECK(gaussian_multi(1) == Approx(1.2533141).margin(1e-7));
    CHECK(gaussian_multi(2) == Approx(std::numbers::pi / std::sqrt(3.0)).margin(1e-12));

    for (int m = 1; m <= 2; ++m) {
        const double numeric = absq_test::nested_gaussian_quad(
            m, [m](std::span<const double> x) { return s_ml(m, 0, x); }, 1e-7);
        CHECK(numeric == Approx(gaussian_multi(m)).margin(1e-6));
    }
}

TEST_CASE("telescoping product identity") {
    double product = 1.0;
    for (int m = 1; m <= 12; ++m) {
        product *= std::sqrt(std::numbers::pi * m / (m + 1.0));
        CHECK(std::abs(product / gaussian_multi(m) - 1.0) <= 1e-12);
    }
}

TEST_CASE("scaled_gaussian_multi") {
    CHECK(scaled_gaussian_multi(2) == Approx(std::sqrt(std::numbers::pi) / 2).margin(1e-12));
    CHECK(scaled_gaussian_multi(3) == Approx(std::numbers::pi / std::pow(3.0, 1.5)).margin(1e-12));
    CHECK_THROWS_AS(scaled_gaussian_multi(1), std::invalid_argument);

    SECTION("matches quadrature of exp(-k S_{k-1,0})") {
        for (int k = 2; k <= 3; ++k) {
            const double numeric = absq_test::nested_gaussian_quad(
                k - 1, [k](std::span<const double> x) { return k * s_ml(k - 1, 0, x); }, 1e-7);
            CHECK(numeric == Approx(scaled_gaussian_multi(k)).margin(1e-6));
        }
    }

    SECTION("change-of-variables identity") {
        for (int k = 2; k <= 6; ++k) {
            const double expected = std::pow(double(k), -0.5 * (k - 1)) * gaussian_multi(k - 1);
            CHECK(std::abs(scaled_gaussian_multi(k) / expected - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("ratio_report") {
    absq::counting::CountTable table;
    const std::vector<std::int64_t> sevens = {7};
    const auto rows = ratio_report(2, sevens, table);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].exact == 3432);
    CHECK(rows[0].ratio == Approx(0.9823).margin(0.001));

    const std::vector<std::int64_t> ns = {10, 100, 1000};
    const auto conv = ratio_report(2, ns, table);
    CHECK(std::abs(conv[2].ratio - 1.0) < 0.001);
    CHECK(std::abs(conv[1].ratio - 1.0) < std::abs(conv[0].ratio - 1.0));
    CHECK(std::abs(conv[2].ratio - 1.0) < std::abs(conv[1].ratio - 1.0));
    // f_2 = C(2n,n): Stirling's correction puts the ratio near 1 - 1/(8n)
    CHECK(conv[2].ratio == Approx(1.0 - 1.0 / 8000.0).margin(1e-4));

    CHECK_THROWS_AS(ratio_report(1, sevens, table), std::invalid_argument);
}

TEST_CASE("log_big is accurate on huge integers") {
    const BigCount big = boost::multiprecision::pow(BigCount(7), 500u);
    CHECK(absq::log_big(big) == Approx(500.0 * std::log(7.0)).epsilon(1e-14));
    CHECK(absq::log_big(BigCount(1)) == 0.0);
    CHECK_THROWS_AS(absq::log_big(BigCount(0)), std::domain_error);
}
