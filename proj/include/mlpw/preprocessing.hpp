#pragma once

#include "mlpw/dataset.hpp"

namespace mlpw {

/// Per-feature z-score transform fitted on a training set. Zero-variance
/// features map to 0 so distances never blow up on constants.
struct FeatureScaler {
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;  // population standard deviation; 0 marks a constant feature

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd apply(const Eigen::MatrixXd& features) const;
    MultiLabelDataset apply(const MultiLabelDataset& ds) const;
};

/// Fits mean/stddev on the given dataset (needs N >= 2).
FeatureScaler fit_scaler(const MultiLabelDataset& ds);

}  // namespace mlpw
