#pragma once

namespace mlpw {

/// Two-sided label support emitted by a pairwise binary classifier.
/// Components are nonnegative and sum to 1 (within 1e-9).
struct SupportPair {
    double s_m1 = 0.5;
    double s_m2 = 0.5;
};

}  // namespace mlpw
