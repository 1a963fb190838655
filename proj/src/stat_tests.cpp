#include "mlpw/stat_tests.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "mlpw/errors.hpp"

namespace mlpw {

namespace {

// Regularized lower incomplete gamma P(a,x) by series expansion.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a,x) by continued fraction (Lentz).
double gamma_q_cf(double a, double x) {
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

double chi_square_survival(double x, int dof) {
    if (dof < 1) throw numeric_error("chi_square_survival: dof must be >= 1");
    if (x <= 0.0) return 1.0;
    const double a = dof / 2.0;
    const double hx = x / 2.0;
    if (hx < a + 1.0) return 1.0 - gamma_p_series(a, hx);
    return gamma_q_cf(a, hx);
}

Eigen::VectorXd midranks(const Eigen::VectorXd& values) {
    const Eigen::Index n = values.size();
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });
    Eigen::VectorXd ranks(n);
    Eigen::Index i = 0;
    while (i < n) {
        Eigen::Index j = i;
        while (j + 1 < n && values(order[j + 1]) == values(order[i])) ++j;
        const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (Eigen::Index k = i; k <= j; ++k) ranks(order[k]) = shared;
        i = j + 1;
    }
    return ranks;
}

FriedmanResult friedman_test(const Eigen::MatrixXd& losses) {
    const Eigen::Index n = losses.rows();
    const Eigen::Index k = losses.cols();
    if (n < 2 || k < 2) throw config_error("friedman_test: need >= 2 rows and >= 2 columns");

    Eigen::VectorXd rank_sum = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < n; ++i) rank_sum += midranks(losses.row(i).transpose());

    FriedmanResult res;
    res.average_ranks = rank_sum / static_cast<double>(n);
    const double kd = static_cast<double>(k);
    const double nd = static_cast<double>(n);
    res.statistic = 12.0 * nd / (kd * (kd + 1.0)) *
                    (res.average_ranks.squaredNorm() - kd * (kd + 1.0) * (kd + 1.0) / 4.0);
    res.statistic = std::max(res.statistic, 0.0);  // guard tiny negative rounding
    res.p_value = chi_square_survival(res.statistic, static_cast<int>(k) - 1);
    return res;
}

double nemenyi_critical_difference(int k, int n, double alpha) {
    // Studentized range / sqrt(2) at infinite degrees of freedom, k = 2..10.
    static const double q05[] = {1.959964, 2.343701, 2.569032, 2.727774,
                                 2.849705, 2.948319, 3.030879, 3.101730, 3.163684};
    static const double q10[] = {1.644854, 2.052293, 2.291341, 2.459516,
                                 2.588521, 2.692732, 2.779884, 2.854606, 2.919889};
    if (k < 2 || k > 10) throw config_error("nemenyi: k must lie in [2,10]");
    if (n < 1) throw config_error("nemenyi: n must be positive");
    const double* table = nullptr;
    if (std::fabs(alpha - 0.05) < 1e-12) table = q05;
    else if (std::fabs(alpha - 0.1) < 1e-12) table = q10;
    else throw config_error("nemenyi: alpha must be 0.05 or 0.1");
    return table[k - 2] * std::sqrt(k * (k + 1.0) / (6.0 * n));
}

double wilcoxon_signed_rank(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) throw config_error("wilcoxon: length mismatch");
    std::vector<double> diffs;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double d = a(i) - b(i);
        if (d != 0.0) diffs.push_back(d);
    }
    const std::size_t n = diffs.size();
    if (n == 0) return 1.0;  // all differences zero

    Eigen::VectorXd abs_d(n);
    for (std::size_t i = 0; i < n; ++i) abs_d(static_cast<Eigen::Index>(i)) = std::fabs(diffs[i]);
    const Eigen::VectorXd ranks = midranks(abs_d);

    double w_plus = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (diffs[i] > 0.0) w_plus += ranks(static_cast<Eigen::Index>(i));

    if (n <= 25) {
        // Exact null distribution over sign assignments, in doubled-rank units
        // so midranks stay integral.
        std::vector<long long> r2(n);
        long long total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            r2[i] = std::llround(2.0 * ranks(static_cast<Eigen::Index>(i)));
            total += r2[i];
        }
        std::vector<double> count(static_cast<std::size_t>(total) + 1, 0.0);
        count[0] = 1.0;
        long long reach = 0;
        for (std::size_t i = 0; i < n; ++i) {
            reach += r2[i];
            for (long long w = reach; w >= r2[i]; --w)
                count[static_cast<std::size_t>(w)] += count[static_cast<std::size_t>(w - r2[i])];
        }
        // 2*W+ is symmetric around total/2; count assignments at least as far
        // from the center as the observed statistic (doubled once more so the
        // comparison stays integral).
        const long long w2_obs = std::llround(2.0 * w_plus);
        const long long dev_obs = std::llabs(2 * w2_obs - total);
        double extreme = 0.0;
        double all = 0.0;
        for (long long w = 0; w <= total; ++w) {
            all += count[static_cast<std::size_t>(w)];
            if (std::llabs(2 * w - total) >= dev_obs)
                extreme += count[static_cast<std::size_t>(w)];
        }
        return extreme / all;
    }

    // Normal approximation with tie and continuity corrections.
    const double nd = static_cast<double>(n);
    const double mu = nd * (nd + 1.0) / 4.0;
    double tie_term = 0.0;
    {
        std::vector<double> sorted(abs_d.data(), abs_d.data() + n);
        std::sort(sorted.begin(), sorted.end());
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
            const double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
    }
    const double sigma2 = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term / 48.0;
    if (sigma2 <= 0.0) return 1.0;
    const double dev = std::fabs(w_plus - mu);
    const double z = (dev - 0.5) / std::sqrt(sigma2);
    return std::min(1.0, 2.0 * normal_sf(std::max(z, 0.0)));
}

double spearman(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys) {
    if (xs.size() != ys.size()) throw config_error("spearman: length mismatch");
    if (xs.size() < 3) throw config_error("spearman: need at least 3 observations");
    const Eigen::VectorXd rx = midranks(xs);
    const Eigen::VectorXd ry = midranks(ys);
    const Eigen::VectorXd cx = rx.array() - rx.mean();
    const Eigen::VectorXd cy = ry.array() - ry.mean();
    const double sx = cx.norm();
    const double sy = cy.norm();
    if (sx == 0.0 || sy == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return cx.dot(cy) / (sx * sy);
}

std::vector<double> holm_adjust(const std::vector<double>& p_values) {
    const std::size_t m = p_values.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
    std::vector<double> adjusted(m, 0.0);
    double running = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double scaled = static_cast<double>(m - i) * p_values[order[i]];
        running = std::max(running, std::min(1.0, scaled));
        adjusted[order[i]] = running;
    }
    return adjusted;
}

LossMatrix read_loss_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open loss matrix '" + path + "'");
    LossMatrix lm;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw parse_error("empty loss matrix file");
    ++line_no;
    {
        std::stringstream ss(line);
        std::string field;
        bool first = true;
        while (std::getline(ss, field, ',')) {
            if (!first) lm.col_names.push_back(field);
            first = false;
        }
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::getline(ss, field, ',');
        lm.row_names.push_back(field);
        std::vector<double> row;
        while (std::getline(ss, field, ',')) {
            try {
                row.push_back(std::stod(field));
            } catch (const std::exception&) {
                throw parse_error("bad numeric cell '" + field + "'", line_no);
            }
        }
        if (row.size() != lm.col_names.size())
            throw parse_error("row width mismatch", line_no);
        rows.push_back(std::move(row));
    }
    lm.values.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(lm.col_names.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            lm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return lm;
}

void write_loss_matrix_csv(const LossMatrix& lm, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open '" + path + "' for writing");
    out << "id";
    for (const auto& c : lm.col_names) out << ',' << c;
    out << '\n';
    char buf[40];
    for (Eigen::Index i = 0; i < lm.values.rows(); ++i) {
        out << lm.row_names[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < lm.values.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.12g", lm.values(i, j));
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace mlpw
