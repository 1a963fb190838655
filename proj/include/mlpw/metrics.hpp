#pragma once

#include <Eigen/Dense>

namespace mlpw {

/// How a per-label (or pooled) F1 of 0/0 is scored: a label that never occurs
/// and is never predicted counts as perfect by default; `skip` drops it from
/// the macro average instead.
enum class F1ZeroRule { perfect, skip };

/// Fraction of individual label decisions that differ.
double hamming_loss(const Eigen::MatrixXi& truth, const Eigen::MatrixXi& pred);

/// Fraction of instances whose label vector is not matched exactly.
double zero_one_loss(const Eigen::MatrixXi& truth, const Eigen::MatrixXi& pred);

/// 1 - F1 with TP/FP/FN pooled over all labels.
double micro_f1_loss(const Eigen::MatrixXi& truth, const Eigen::MatrixXi& pred,
                     F1ZeroRule zero_rule = F1ZeroRule::perfect);

/// 1 - mean of per-label F1.
double macro_f1_loss(const Eigen::MatrixXi& truth, const Eigen::MatrixXi& pred,
                     F1ZeroRule zero_rule = F1ZeroRule::perfect);

}  // namespace mlpw
