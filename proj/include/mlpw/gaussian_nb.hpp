#pragma once

#include <Eigen/Dense>

#include "mlpw/support.hpp"

namespace mlpw {

/// Training material for one pairwise binary problem. Target 0 stands for the
/// first class of the pair, 1 for the second.
struct BinaryTrainingSet {
    Eigen::MatrixXd features;  // N x d
    Eigen::VectorXi targets;   // entries in {0,1}
};

/// Gaussian Naive Bayes over two classes: empirical (unsmoothed) priors and
/// per-class per-feature normal likelihoods with a relative variance floor.
/// A training set containing a single class yields a constant model.
struct GaussianNb {
    Eigen::Vector2d prior = {0.5, 0.5};
    Eigen::MatrixXd mean;      // 2 x d
    Eigen::MatrixXd variance;  // 2 x d, floored strictly positive
    bool constant = false;     // single-class training set
    SupportPair constant_support = {0.5, 0.5};

    /// Posterior (P(class 0 | x), P(class 1 | x)). Likelihoods accumulate in
    /// the log domain and normalize by log-sum-exp.
    SupportPair posterior(const Eigen::VectorXd& x) const;
};

/// Fits the model. The variance floor is
///   max(var_cf, 1e-9 * (global feature variance + 1e-12))
/// so constant-within-class features keep a finite likelihood.
GaussianNb train_gnb(const BinaryTrainingSet& ts);

}  // namespace mlpw
