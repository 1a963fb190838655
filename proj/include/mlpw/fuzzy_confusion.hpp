#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>

#include "mlpw/rrc.hpp"
#include "mlpw/support.hpp"

namespace mlpw {

/// The three ways of estimating the local confusion matrix: the plain
/// estimator, the class-weighted estimator for imbalanced pairs, and the
/// overlap estimator that keeps double-labeled instances at membership 0.5.
enum class FcmVariant { plain, weighted, overlap };

/// Fuzzy intersections use the product t-norm by default; min is available
/// for sensitivity checks.
enum class TNorm { product, min };

/// Per-pair view of the validation set: true-class memberships, decision
/// region memberships (RRC probabilities at each validation point) and the
/// class weights. One instance serves all three estimator variants.
struct FuzzyValidationSet {
    std::shared_ptr<const Eigen::MatrixXd> points;  // standardized features, one row per instance

    Eigen::ArrayXd v_m1, v_m2;  // 1 where the instance is exclusively labeled with that class
    Eigen::ArrayXd overlap;     // 0.5 where both pair labels are relevant, else 0
    Eigen::ArrayXd dreg_m1, dreg_m2;  // RRC probability of each class at the instance
    double w_m1 = 1.0, w_m2 = 1.0;    // min(1, |other| / |own|); 1 for an empty class
};

/// 2x2 local confusion estimate; rows index the true class, columns the
/// classifier decision. `degenerate` marks the all-memberships-zero guard.
struct FuzzyConfusionMatrix {
    Eigen::Matrix2d eps = Eigen::Matrix2d::Zero();
    bool degenerate = false;
};

/// Column-normalized confusion matrix: c(s,h) approximates P(s | h, z).
/// Columns sum to 1 exactly; an all-zero column falls back to (1/2, 1/2).
struct CompetencePair {
    Eigen::Matrix2d c = Eigen::Matrix2d::Constant(0.5);
};

/// Gaussian potential membership exp(-beta * ||z - x||^2) on standardized
/// features.
double neighborhood_membership(const Eigen::VectorXd& z, const Eigen::VectorXd& x, double beta);

/// Class weights min(1, |V_other| / |V_s|) from exclusive pair counts; an
/// empty class gets weight 1 (nothing to down-weight).
std::pair<double, double> class_weights(const Eigen::MatrixXi& labels, int m1, int m2);

/// Builds the per-pair validation view. `support_fn` evaluates the trained
/// pairwise classifier on a standardized validation point; its output feeds
/// the RRC to obtain the decision-region memberships.
FuzzyValidationSet build_fuzzy_validation(
    std::shared_ptr<const Eigen::MatrixXd> points, const Eigen::MatrixXi& labels, int m1, int m2,
    const std::function<SupportPair(const Eigen::VectorXd&)>& support_fn, const RrcConfig& rrc);

/// Sigma-count estimate of the local confusion matrix around z.
FuzzyConfusionMatrix estimate_confusion(const Eigen::VectorXd& z, const FuzzyValidationSet& fvs,
                                        FcmVariant variant, double beta,
                                        TNorm tnorm = TNorm::product);

/// Same, with the neighborhood memberships already evaluated (one shared
/// vector serves all pairs at a fixed query point).
FuzzyConfusionMatrix estimate_confusion(const Eigen::ArrayXd& neighborhood,
                                        const FuzzyValidationSet& fvs, FcmVariant variant,
                                        TNorm tnorm = TNorm::product);

CompetencePair competence(const FuzzyConfusionMatrix& fcm);

/// Eq-style correction: p(s|x) = sum_h rrc(h|x) * c(s,h). Components inherit
/// the sum-to-one property from the competence columns and RRC complementarity.
SupportPair apply_correction(const RrcProbability& rrc, const CompetencePair& comp);

}  // namespace mlpw
