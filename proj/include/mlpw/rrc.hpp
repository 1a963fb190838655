#pragma once

#include "mlpw/beta.hpp"
#include "mlpw/support.hpp"

namespace mlpw {

struct RrcConfig {
    double concentration = 2.0;  // concentration c; beta shapes are c*d and c*(1-d)
    int quad_points = 1025;      // quadrature nodes budget on [0,1], must be >= 64
    bool linked_supports = false;  // closed form assuming the two supports sum to 1
};

/// Probability that the randomized surrogate of a binary classifier assigns
/// the query to each class of the pair. Components sum to 1 within the
/// quadrature tolerance (1e-6).
struct RrcProbability {
    double p_m1 = 0.5;
    double p_m2 = 0.5;
};

/// P(h|x) of the randomized reference classifier whose beta-distributed
/// supports have means equal to the deterministic supports in `sp`.
///
/// Default route integrates pdf(u; h) * cdf(u; other) over [0,1] treating the
/// two support variables as independent. The integral is evaluated as two
/// composite Simpson rules split at u = 1/2, with the upper half rewritten
/// against the complementary CDF so the integrand stays bounded when a shape
/// parameter drops below 1 (the raw product behaves like u^(c-1) at the
/// endpoints). Nodes that still evaluate non-finite (c < 1) fall back to the
/// midpoint of the adjacent subinterval.
///
/// With `linked_supports` the supports are treated as complementary random
/// variables, which collapses the probability to 1 - cdf(1/2; h).
RrcProbability rrc_probability(const SupportPair& sp, const RrcConfig& cfg = {});

}  // namespace mlpw
