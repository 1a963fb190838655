#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mlpw/beta.hpp"

using namespace mlpw;

namespace {

// Independent reference for the regularized incomplete beta: the classical
// power series
//   I_x(a,b) = x^a (1-x)^b / (a B(a,b)) * [1 + sum_n B(a+1,n+1)/B(a+b,n+1) x^(n+1)]
// with the tail symmetry applied for x > 1/2. Shares no code with the
// continued-fraction implementation under test.
double series_incbeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (x > 0.5) return 1.0 - series_incbeta(b, a, 1.0 - x);
    const double lb = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    double sum = 1.0;
    for (int n = 0; n < 2000; ++n) {
        const double lt = std::lgamma(a + 1.0) + std::lgamma(n + 1.0) -
                          std::lgamma(a + n + 2.0) -
                          (std::lgamma(a + b) + std::lgamma(n + 1.0) -
                           std::lgamma(a + b + n + 1.0)) +
                          (n + 1.0) * std::log(x);
        const double term = std::exp(lt);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return std::exp(a * std::log(x) + b * std::log1p(-x) - lb) * sum / a;
}

}  // namespace

TEST_CASE("beta_params matches the mean condition") {
    const BetaParams p = beta_params(0.5, 2.0);
    CHECK(p.lambda == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.mu == doctest::Approx(1.0).epsilon(1e-15));

    const BetaParams q = beta_params(0.7, 2.0);
    CHECK(q.lambda == doctest::Approx(1.4).epsilon(1e-15));
    CHECK(q.mu == doctest::Approx(0.6).epsilon(1e-15));

    // clamping keeps both shapes strictly positive
    const BetaParams r = beta_params(1.0, 2.0);
    CHECK(r.lambda == doctest::Approx(2.0 * (1.0 - 1e-6)).epsilon(1e-12));
    CHECK(r.mu == doctest::Approx(2e-6).epsilon(1e-9));

    for (double d : {0.0, 0.3, 0.9, 1.0}) {
        const BetaParams bp = beta_params(d, 2.0);
        const double mean = bp.lambda / (bp.lambda + bp.mu);
        const double clamped = std::clamp(d, 1e-6, 1.0 - 1e-6);
        CHECK(std::fabs(mean - clamped) < 1e-12);
    }

    CHECK_THROWS(beta_params(0.5, 0.0));
    CHECK_THROWS(beta_params(0.5, -1.0));
}

TEST_CASE("beta_pdf basics") {
    CHECK(beta_pdf(0.5, {1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(beta_pdf(0.25, {2.0, 2.0}) == doctest::Approx(6.0 * 0.25 * 0.75).epsilon(1e-13));
    CHECK(beta_pdf(0.0, {2.0, 1.0}) == 0.0);
    CHECK(std::isinf(beta_pdf(1.0, {1.4, 0.6})));
    CHECK_THROWS(beta_pdf(0.5, {0.0, 1.0}));
    CHECK_THROWS(beta_pdf(-0.1, {1.0, 1.0}));
}

TEST_CASE("beta_cdf endpoints and uniform case") {
    CHECK(beta_cdf(0.0, {2.0, 5.0}) == 0.0);
    CHECK(beta_cdf(1.0, {2.0, 5.0}) == 1.0);
    CHECK(beta_cdf(0.5, {1.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(beta_cdf(0.25, {1.0, 1.0}) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("beta_cdf agrees with the independent series reference to 1e-12") {
    const double shapes[] = {0.2, 0.6, 1.0, 1.4, 2.0, 5.0, 8.0, 16.0};
    for (double a : shapes) {
        for (double b : shapes) {
            for (double x = 0.05; x < 1.0; x += 0.05) {
                const double got = beta_cdf(x, {a, b});
                const double want = series_incbeta(a, b, x);
                CHECK(std::fabs(got - want) < 1e-12);
            }
        }
    }
    // the worked example value
    CHECK(std::fabs(beta_cdf(0.3, {2.0, 5.0}) - series_incbeta(2.0, 5.0, 0.3)) < 1e-12);
}

TEST_CASE("beta_tail complements the cdf with full relative accuracy") {
    const BetaParams p{8.0, 8e-6};
    const double tail = beta_tail(0.5, p);
    CHECK(tail > 0.0);
    CHECK(std::fabs(beta_cdf(0.5, p) + tail - 1.0) < 1e-12);
    for (double x : {0.1, 0.5, 0.9, 0.999}) {
        const BetaParams q{1.4, 0.6};
        CHECK(std::fabs(beta_cdf(x, q) + beta_tail(x, q) - 1.0) < 1e-12);
    }
}
