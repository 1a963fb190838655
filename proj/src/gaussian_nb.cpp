#include "mlpw/gaussian_nb.hpp"

#include <cmath>

#include "mlpw/errors.hpp"

namespace mlpw {

GaussianNb train_gnb(const BinaryTrainingSet& ts) {
    const Eigen::Index n = ts.features.rows();
    const Eigen::Index d = ts.features.cols();
    if (n < 1) throw config_error("train_gnb: empty training set");
    if (ts.targets.size() != n) throw config_error("train_gnb: target/feature size mismatch");

    GaussianNb m;
    Eigen::Vector2d count = Eigen::Vector2d::Zero();
    for (Eigen::Index i = 0; i < n; ++i) count(ts.targets(i)) += 1.0;

    if (count(0) == 0.0 || count(1) == 0.0) {
        m.constant = true;
        m.constant_support = count(0) > 0.0 ? SupportPair{1.0, 0.0} : SupportPair{0.0, 1.0};
        m.prior = {count(0) / n, count(1) / n};
        return m;
    }

    m.prior = count / static_cast<double>(n);
    m.mean = Eigen::MatrixXd::Zero(2, d);
    m.variance = Eigen::MatrixXd::Zero(2, d);
    for (Eigen::Index i = 0; i < n; ++i)
        m.mean.row(ts.targets(i)) += ts.features.row(i);
    for (int c = 0; c < 2; ++c) m.mean.row(c) /= count(c);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int c = ts.targets(i);
        m.variance.row(c) +=
            (ts.features.row(i) - m.mean.row(c)).array().square().matrix();
    }
    for (int c = 0; c < 2; ++c) m.variance.row(c) /= count(c);

    const Eigen::RowVectorXd global_mean = ts.features.colwise().mean();
    const Eigen::RowVectorXd global_var =
        (ts.features.rowwise() - global_mean).array().square().colwise().mean();
    const Eigen::RowVectorXd floor = 1e-9 * (global_var.array() + 1e-12);
    for (int c = 0; c < 2; ++c)
        m.variance.row(c) = m.variance.row(c).cwiseMax(floor);
    return m;
}

SupportPair GaussianNb::posterior(const Eigen::VectorXd& x) const {
    if (constant) return constant_support;
    if (x.size() != mean.cols()) throw numeric_error("gnb: dimension mismatch");

    Eigen::Vector2d log_post;
    for (int c = 0; c < 2; ++c) {
        double acc = std::log(prior(c));
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            const double diff = x(j) - mean(c, j);
            acc += -0.5 * std::log(2.0 * M_PI * variance(c, j)) -
                   diff * diff / (2.0 * variance(c, j));
        }
        log_post(c) = acc;
    }
    const double mx = log_post.maxCoeff();
    const double z = std::exp(log_post(0) - mx) + std::exp(log_post(1) - mx);
    return SupportPair{std::exp(log_post(0) - mx) / z, std::exp(log_post(1) - mx) / z};
}

}  // namespace mlpw
