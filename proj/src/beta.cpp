#include "mlpw/beta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mlpw/errors.hpp"

namespace mlpw {

namespace {

void check_params(const BetaParams& p) {
    if (!(p.lambda > 0.0) || !(p.mu > 0.0))
        throw std::domain_error("beta: shape parameters must be positive");
}

// Continued fraction for the incomplete beta function, modified Lentz.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw numeric_error("beta_cdf: continued fraction did not converge");
}

double incbeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lnfront = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    const double front = std::exp(lnfront);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - log_beta(b, a)) *
                     betacf(b, a, 1.0 - x) / b;
}

}  // namespace

double log_beta(double lambda, double mu) {
    return std::lgamma(lambda) + std::lgamma(mu) - std::lgamma(lambda + mu);
}

BetaParams beta_params(double support, double concentration) {
    if (!(concentration > 0.0))
        throw std::domain_error("beta_params: concentration must be positive");
    const double d = std::clamp(support, kSupportClamp, 1.0 - kSupportClamp);
    return BetaParams{concentration * d, concentration * (1.0 - d)};
}

double beta_pdf(double u, const BetaParams& p) {
    check_params(p);
    if (u < 0.0 || u > 1.0) throw std::domain_error("beta_pdf: u outside [0,1]");
    if (u == 0.0) {
        if (p.lambda > 1.0) return 0.0;
        if (p.lambda == 1.0) return std::exp(-log_beta(p.lambda, p.mu));
        return std::numeric_limits<double>::infinity();
    }
    if (u == 1.0) {
        if (p.mu > 1.0) return 0.0;
        if (p.mu == 1.0) return std::exp(-log_beta(p.lambda, p.mu));
        return std::numeric_limits<double>::infinity();
    }
    return std::exp((p.lambda - 1.0) * std::log(u) + (p.mu - 1.0) * std::log1p(-u) -
                    log_beta(p.lambda, p.mu));
}

double beta_cdf(double u, const BetaParams& p) {
    check_params(p);
    if (u < 0.0 || u > 1.0) throw std::domain_error("beta_cdf: u outside [0,1]");
    return incbeta(p.lambda, p.mu, u);
}

double beta_tail(double u, const BetaParams& p) {
    check_params(p);
    if (u < 0.0 || u > 1.0) throw std::domain_error("beta_tail: u outside [0,1]");
    return incbeta(p.mu, p.lambda, 1.0 - u);
}

}  // namespace mlpw
