#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace mlpw {

/// Rectangular matrix of losses: one row per dataset (or fold), one column
/// per algorithm. Reads/writes CSV with a header row of algorithm names and
/// an index column.
struct LossMatrix {
    std::vector<std::string> row_names;
    std::vector<std::string> col_names;
    Eigen::MatrixXd values;
};

LossMatrix read_loss_matrix_csv(const std::string& path);
void write_loss_matrix_csv(const LossMatrix& lm, const std::string& path);

/// Midranks of a row of values, rank 1 = smallest. Ties share the average rank.
Eigen::VectorXd midranks(const Eigen::VectorXd& values);

struct FriedmanResult {
    double statistic = 0.0;  // classical chi-square form
    double p_value = 1.0;
    Eigen::VectorXd average_ranks;  // per algorithm, 1 = best
};

/// Friedman test over rows of the loss matrix (smaller loss = better rank).
FriedmanResult friedman_test(const Eigen::MatrixXd& losses);

/// Nemenyi critical difference q_alpha * sqrt(k(k+1)/(6n)) from the embedded
/// studentized-range table; supports k in [2,10] and alpha in {0.05, 0.1}.
double nemenyi_critical_difference(int k, int n, double alpha);

/// Two-sided Wilcoxon signed-rank p-value of paired samples. Zero differences
/// are discarded; |differences| are midranked. Exact symmetric-distance
/// distribution for up to 25 pairs, normal approximation with continuity and
/// tie corrections above. All differences zero yields p = 1.
double wilcoxon_signed_rank(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Spearman rank correlation (Pearson on midranks). Returns NaN when either
/// vector is constant.
double spearman(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys);

/// Holm step-down adjustment of a family of p-values.
std::vector<double> holm_adjust(const std::vector<double>& p_values);

/// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_survival(double x, int dof);

}  // namespace mlpw
