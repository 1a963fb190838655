#include "mlpw/metrics.hpp"

#include "mlpw/errors.hpp"

namespace mlpw {

namespace {

void check_shapes(const Eigen::MatrixXi& truth, const Eigen::MatrixXi& pred) {
    if (truth.rows() != pred.rows() || truth.cols() != pred.cols())
        throw numeric_error("loss: truth/prediction shape mismatch");
    if (truth.rows() == 0 || truth.cols() == 0) throw numeric_error("loss: empty matrices");
}

struct Counts {
    double tp = 0.0, fp = 0.0, fn = 0.0;
    bool empty() const { return tp + fp + fn == 0.0; }
    double f1() const { return 2.0 * tp / (2.0 * tp + fp + fn); }
};

Counts column_counts(const Eigen::MatrixXi& truth, const Eigen::MatrixXi& pred,
                     Eigen::Index j) {
    Counts c;
    for (Eigen::Index i = 0; i < truth.rows(); ++i) {
        if (truth(i, j) && pred(i, j)) c.tp += 1.0;
        else if (!truth(i, j) && pred(i, j)) c.fp += 1.0;
        else if (truth(i, j) && !pred(i, j)) c.fn += 1.0;
    }
    return c;
}

}  // namespace

double hamming_loss(const Eigen::MatrixXi& truth, const Eigen::MatrixXi& pred) {
    check_shapes(truth, pred);
    return (truth.array() != pred.array()).cast<double>().sum() /
           static_cast<double>(truth.size());
}

double zero_one_loss(const Eigen::MatrixXi& truth, const Eigen::MatrixXi& pred) {
    check_shapes(truth, pred);
    double wrong = 0.0;
    for (Eigen::Index i = 0; i < truth.rows(); ++i)
        if ((truth.row(i).array() != pred.row(i).array()).any()) wrong += 1.0;
    return wrong / static_cast<double>(truth.rows());
}

double micro_f1_loss(const Eigen::MatrixXi& truth, const Eigen::MatrixXi& pred,
                     F1ZeroRule) {
    check_shapes(truth, pred);
    Counts total;
    for (Eigen::Index j = 0; j < truth.cols(); ++j) {
        const Counts c = column_counts(truth, pred, j);
        total.tp += c.tp;
        total.fp += c.fp;
        total.fn += c.fn;
    }
    // Pooled 0/0 (nothing relevant, nothing predicted anywhere) is perfect.
    return total.empty() ? 0.0 : 1.0 - total.f1();
}

double macro_f1_loss(const Eigen::MatrixXi& truth, const Eigen::MatrixXi& pred,
                     F1ZeroRule zero_rule) {
    check_shapes(truth, pred);
    double sum = 0.0;
    int counted = 0;
    for (Eigen::Index j = 0; j < truth.cols(); ++j) {
        const Counts c = column_counts(truth, pred, j);
        if (c.empty()) {
            if (zero_rule == F1ZeroRule::perfect) {
                sum += 1.0;
                ++counted;
            }
            continue;
        }
        sum += c.f1();
        ++counted;
    }
    if (counted == 0) return 0.0;  // every label skipped: nothing to lose
    return 1.0 - sum / counted;
}

}  // namespace mlpw
