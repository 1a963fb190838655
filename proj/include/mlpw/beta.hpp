#pragma once

#include <utility>

namespace mlpw {

/// Shape parameters of a beta distribution. Both must be strictly positive.
struct BetaParams {
    double lambda = 1.0;  // first shape (alpha)
    double mu = 1.0;      // second shape (beta)
};

/// Builds the beta parameters whose mean matches the given support value:
/// lambda = c * d', mu = c * (1 - d') with d' = d clamped to
/// [kSupportClamp, 1 - kSupportClamp]. c is the concentration knob.
BetaParams beta_params(double support, double concentration);

inline constexpr double kSupportClamp = 1e-6;

/// Density u^(l-1) (1-u)^(m-1) / B(l, m). Evaluated in log space. May return
/// +inf at an endpoint when the corresponding shape parameter is below 1.
double beta_pdf(double u, const BetaParams& p);

/// Regularized incomplete beta I_u(lambda, mu), i.e. the CDF. Continued
/// fraction (modified Lentz) with the I_x(a,b) = 1 - I_{1-x}(b,a) switch.
double beta_cdf(double u, const BetaParams& p);

/// Upper tail 1 - CDF, computed directly through the symmetry relation so
/// that tiny tails keep full relative accuracy.
double beta_tail(double u, const BetaParams& p);

/// log of the complete beta function B(lambda, mu).
double log_beta(double lambda, double mu);

}  // namespace mlpw
