#include "mlpw/dataset_stats.hpp"

#include <cmath>

#include "mlpw/errors.hpp"

namespace mlpw {

namespace {

Eigen::VectorXd per_label_imbalance(const MultiLabelDataset& ds) {
    const Eigen::VectorXd counts = ds.labels.cast<double>().colwise().sum();
    const double max_count = counts.maxCoeff();
    for (Eigen::Index j = 0; j < counts.size(); ++j) {
        if (counts(j) <= 0.0)
            throw numeric_error("average_imbalance_ratio: label '" + ds.label_names[j] +
                                "' has no positive instance");
    }
    return max_count / counts.array();
}

}  // namespace

double label_cardinality(const MultiLabelDataset& ds) {
    return ds.labels.cast<double>().sum() / static_cast<double>(ds.n());
}

double label_density(const MultiLabelDataset& ds) {
    return label_cardinality(ds) / static_cast<double>(ds.l());
}

double average_imbalance_ratio(const MultiLabelDataset& ds) {
    return per_label_imbalance(ds).mean();
}

double average_scumble(const MultiLabelDataset& ds) {
    const Eigen::VectorXd ir = per_label_imbalance(ds);
    double total = 0.0;
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        double log_sum = 0.0;
        double sum = 0.0;
        int active = 0;
        for (Eigen::Index j = 0; j < ds.l(); ++j) {
            if (ds.labels(i, j)) {
                log_sum += std::log(ir(j));
                sum += ir(j);
                ++active;
            }
        }
        if (active == 0) continue;
        const double geo = std::exp(log_sum / active);
        const double mean = sum / active;
        total += 1.0 - geo / mean;
    }
    return total / static_cast<double>(ds.n());
}

DatasetStats compute_stats(const MultiLabelDataset& ds) {
    DatasetStats s;
    s.n = ds.n();
    s.d = ds.d();
    s.l = ds.l();
    s.lc = label_cardinality(ds);
    s.ld = s.lc / static_cast<double>(s.l);
    s.avir = average_imbalance_ratio(ds);
    s.avgsc = average_scumble(ds);
    return s;
}

}  // namespace mlpw
