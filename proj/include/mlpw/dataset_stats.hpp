#pragma once

#include "mlpw/dataset.hpp"

namespace mlpw {

/// Multi-label characteristics of a dataset: size, label cardinality and
/// density, mean imbalance ratio, mean label concurrence (SCUMBLE).
struct DatasetStats {
    Eigen::Index n = 0;
    Eigen::Index d = 0;
    Eigen::Index l = 0;
    double lc = 0.0;     // mean labels per instance
    double ld = 0.0;     // lc / l
    double avir = 0.0;   // mean over labels of max-count / label-count
    double avgsc = 0.0;  // mean instance SCUMBLE
};

/// Mean number of relevant labels per instance.
double label_cardinality(const MultiLabelDataset& ds);

/// label_cardinality / L.
double label_density(const MultiLabelDataset& ds);

/// Mean over labels j of IRLbl_j = max_k count_k / count_j. Throws
/// numeric_error naming the offending label when some label has no positive
/// instance.
double average_imbalance_ratio(const MultiLabelDataset& ds);

/// Mean over instances of
///   SCUMBLE_i = 1 - geomean_{j active}(IRLbl_j) / mean_{j active}(IRLbl_j),
/// where instances without active labels contribute 0.
double average_scumble(const MultiLabelDataset& ds);

DatasetStats compute_stats(const MultiLabelDataset& ds);

}  // namespace mlpw
