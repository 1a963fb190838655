#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mlpw {

/// Immutable-after-load multi-label dataset: N instances with d numeric
/// features and L binary labels. All readers may share one instance.
struct MultiLabelDataset {
    Eigen::MatrixXd features;  // N x d
    Eigen::MatrixXi labels;    // N x L, entries in {0,1}
    std::vector<std::string> feature_names;
    std::vector<std::string> label_names;

    Eigen::Index n() const { return features.rows(); }
    Eigen::Index d() const { return features.cols(); }
    Eigen::Index l() const { return labels.cols(); }
};

/// How label attributes are identified in an input file: an explicit list of
/// attribute names, or "the trailing k attributes".
struct LabelSpec {
    std::vector<std::string> names;  // empty when trailing_count is used
    int trailing_count = 0;
    // Accept real-valued label columns and binarize them as value > 0.
    // Off by default: label values must then be exactly 0 or 1.
    bool binarize = false;

    static LabelSpec trailing(int k) { return LabelSpec{{}, k}; }
    static LabelSpec by_names(std::vector<std::string> ns) { return LabelSpec{std::move(ns), 0}; }
};

/// Parses the CLI/config syntax: "last:k" or a comma-separated name list.
LabelSpec parse_label_spec(const std::string& text);

/// Loads a dense ARFF (numeric features, nominal {0,1} or numeric 0/1 labels)
/// or a CSV with a header row; the format is chosen by file extension
/// (".arff" vs anything else). Throws parse_error with a line number on
/// malformed input and config_error on an unknown label name.
MultiLabelDataset load_dataset(const std::string& path, const LabelSpec& spec);

MultiLabelDataset load_arff(const std::string& path, const LabelSpec& spec);
MultiLabelDataset load_csv(const std::string& path, const LabelSpec& spec);

/// Writes features followed by labels as CSV with a header row. Floating
/// point values round-trip exactly.
void write_csv(const MultiLabelDataset& ds, const std::string& path);

/// Row subset in the given index order.
MultiLabelDataset subset(const MultiLabelDataset& ds, const std::vector<std::size_t>& rows);

struct SplitSpec {
    double t = 0.6;
    std::uint64_t seed = 0;
    int folds = 10;
};

/// Uniform random split into (train, validation) with |train| = round(t*N).
/// The permutation is a pure function of the seed. Throws config_error when
/// the requested sizes degenerate to 0 or N.
std::pair<MultiLabelDataset, MultiLabelDataset> split_train_validation(
    const MultiLabelDataset& ds, const SplitSpec& spec);

struct FoldIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Deterministic k-fold partition of [0, n): test folds are disjoint, cover
/// the range, and differ in size by at most one.
std::vector<FoldIndices> kfold_indices(std::size_t n, int folds, std::uint64_t seed);

}  // namespace mlpw
