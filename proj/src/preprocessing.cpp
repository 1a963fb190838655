#include "mlpw/preprocessing.hpp"

#include <cmath>

#include "mlpw/errors.hpp"

namespace mlpw {

FeatureScaler fit_scaler(const MultiLabelDataset& ds) {
    if (ds.n() < 2) throw config_error("fit_scaler: need at least 2 instances");
    FeatureScaler s;
    s.mean = ds.features.colwise().mean();
    const Eigen::MatrixXd centered = ds.features.rowwise() - s.mean.transpose();
    s.stddev = (centered.array().square().colwise().mean()).sqrt();
    return s;
}

Eigen::VectorXd FeatureScaler::apply(const Eigen::VectorXd& x) const {
    if (x.size() != mean.size()) throw numeric_error("scaler: dimension mismatch");
    Eigen::VectorXd out(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j)
        out(j) = stddev(j) > 0.0 ? (x(j) - mean(j)) / stddev(j) : 0.0;
    return out;
}

Eigen::MatrixXd FeatureScaler::apply(const Eigen::MatrixXd& features) const {
    if (features.cols() != mean.size()) throw numeric_error("scaler: dimension mismatch");
    Eigen::MatrixXd out(features.rows(), features.cols());
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
        if (stddev(j) > 0.0)
            out.col(j) = (features.col(j).array() - mean(j)) / stddev(j);
        else
            out.col(j).setZero();
    }
    return out;
}

MultiLabelDataset FeatureScaler::apply(const MultiLabelDataset& ds) const {
    MultiLabelDataset out = ds;
    out.features = apply(ds.features);
    return out;
}

}  // namespace mlpw
