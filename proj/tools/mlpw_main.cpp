#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "mlpw/dataset.hpp"
#include "mlpw/dataset_stats.hpp"
#include "mlpw/errors.hpp"
#include "mlpw/experiment.hpp"

namespace {

using namespace mlpw;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

std::string fmt(double v, int prec = 3) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

int cmd_stats(const std::string& dataset, const std::string& labels, bool binarize,
              const std::string& out) {
    LabelSpec spec = parse_label_spec(labels);
    spec.binarize = binarize;
    const MultiLabelDataset ds = load_dataset(dataset, spec);
    const DatasetStats s = compute_stats(ds);

    std::cout << "name          N      d    L   LC     LD     avIR   AVsc\n";
    std::cout << std::filesystem::path(dataset).stem().string() << "  " << s.n << "  " << s.d
              << "  " << s.l << "  " << fmt(s.lc) << "  " << fmt(s.ld) << "  " << fmt(s.avir)
              << "  " << fmt(s.avgsc) << "\n";

    nlohmann::json j{{"dataset", dataset}, {"n", s.n},   {"d", s.d},
                     {"l", s.l},           {"lc", s.lc}, {"ld", s.ld},
                     {"avir", s.avir},     {"avgsc", s.avgsc}};
    if (!out.empty()) {
        std::ofstream o(out);
        if (!o) throw config_error("cannot open '" + out + "' for writing");
        o << j.dump(2) << '\n';
    } else {
        std::cout << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& dataset,
            const std::string& labels, std::uint64_t seed, bool seed_set,
            const std::string& out, int threads) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    if (!dataset.empty()) {
        cfg.dataset_path = dataset;
        cfg.name = std::filesystem::path(dataset).stem().string();
    }
    if (!labels.empty()) cfg.label_spec = labels;
    if (seed_set) cfg.seed = seed;
    if (!out.empty()) cfg.out_dir = out;
    if (threads > 0) cfg.threads = threads;
    if (cfg.out_dir.empty()) cfg.out_dir = ".";

    const ExperimentReport report = run_experiment(cfg);

    std::filesystem::create_directories(cfg.out_dir);
    const auto base = std::filesystem::path(cfg.out_dir) / cfg.name;
    write_report_json(report, base.string() + "_report.json");
    write_report_csv(report, base.string() + "_folds.csv");

    std::cout << "dataset " << cfg.name << ": " << report.stats.n << " instances, "
              << report.stats.d << " features, " << report.stats.l << " labels\n";
    std::cout << "variant      hamming  zero-one micro-f1 macro-f1\n";
    for (Variant v : cfg.variants) {
        std::cout << variant_name(v);
        for (int pad = static_cast<int>(std::string(variant_name(v)).size()); pad < 13; ++pad)
            std::cout << ' ';
        for (const auto& crit : criterion_names())
            std::cout << fmt(report.mean_loss(v, crit)) << "    ";
        std::cout << '\n';
    }
    std::cout << "report: " << base.string() + "_report.json" << '\n';
    return 0;
}

void print_matrix(const Eigen::MatrixXd& m, const std::vector<std::string>& names) {
    std::cout << "      ";
    for (const auto& n : names) std::cout << n << "  ";
    std::cout << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::cout << names[static_cast<std::size_t>(i)] << "  ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (std::isnan(m(i, j))) std::cout << "   .   ";
            else std::cout << fmt(m(i, j)) << "  ";
        }
        std::cout << '\n';
    }
}

int cmd_compare(const std::vector<std::string>& report_paths, const std::string& criterion,
                const std::string& out) {
    std::vector<ExperimentReport> reports;
    for (const auto& p : report_paths) reports.push_back(read_report_json(p));
    const auto comparisons = compare_reports(reports, criterion);

    for (const auto& cc : comparisons) {
        std::cout << "== " << cc.criterion << " ==\n";
        std::cout << "average ranks:";
        for (Eigen::Index j = 0; j < cc.friedman.average_ranks.size(); ++j)
            std::cout << ' ' << cc.losses.col_names[static_cast<std::size_t>(j)] << '='
                      << fmt(cc.friedman.average_ranks(j));
        std::cout << '\n';
        std::cout << "friedman chi2=" << fmt(cc.friedman.statistic, 4)
                  << " p=" << fmt(cc.friedman.p_value, 6) << '\n';
        std::cout << "nemenyi CD (alpha=0.1): " << fmt(cc.nemenyi_cd) << '\n';
        std::cout << "pairwise wilcoxon p (upper triangle):\n";
        print_matrix(cc.wilcoxon_p, cc.losses.col_names);
        std::cout << "holm-adjusted (substitute for the family-wise control procedure):\n";
        print_matrix(cc.wilcoxon_holm, cc.losses.col_names);
        if (!out.empty()) {
            std::filesystem::create_directories(out);
            const auto base = std::filesystem::path(out) / ("compare_" + cc.criterion);
            write_loss_matrix_csv(cc.losses, base.string() + "_losses.csv");
            LossMatrix wil{cc.losses.col_names, cc.losses.col_names, cc.wilcoxon_p};
            write_loss_matrix_csv(wil, base.string() + "_wilcoxon.csv");
        }
    }
    return 0;
}

int cmd_correlate(const std::vector<std::string>& report_paths, const std::string& criterion,
                  const std::string& out) {
    std::vector<ExperimentReport> reports;
    for (const auto& p : report_paths) reports.push_back(read_report_json(p));
    const auto tables = correlate_reports(reports, criterion);

    for (const auto& t : tables) {
        std::cout << "== spearman rho, " << t.criterion << " loss vs dataset properties ==\n";
        std::cout << "property ";
        for (const auto& v : t.variant_names) std::cout << v << "  ";
        std::cout << '\n';
        for (std::size_t p = 0; p < t.property_names.size(); ++p) {
            std::cout << t.property_names[p] << "  ";
            for (Eigen::Index j = 0; j < t.rho.cols(); ++j) {
                const double r = t.rho(static_cast<Eigen::Index>(p), j);
                if (std::isnan(r)) std::cout << "undef  ";
                else std::cout << fmt(r) << "  ";
            }
            std::cout << '\n';
        }
        if (!out.empty()) {
            std::filesystem::create_directories(out);
            LossMatrix lm{t.property_names, t.variant_names, t.rho};
            write_loss_matrix_csv(
                lm, (std::filesystem::path(out) / ("correlate_" + t.criterion + ".csv")).string());
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Label-pairwise multi-label classifier with local fuzzy confusion correction"};
    app.require_subcommand(1);

    std::string dataset, out, config_path, criterion = "all";
    std::string stats_labels = "last:2", run_labels;
    bool binarize = false;
    std::uint64_t seed = 0;
    int threads = 0;
    std::vector<std::string> report_paths;

    auto* stats = app.add_subcommand("stats", "Dataset characteristics (N d L LC LD avIR AVsc)");
    stats->add_option("--dataset", dataset, "dataset file (.arff or .csv)")->required();
    stats->add_option("--labels", stats_labels, "label spec: 'last:k' or comma-separated names");
    stats->add_flag("--binarize", binarize, "binarize real-valued labels as value > 0");
    stats->add_option("--out", out, "write stats JSON here instead of stdout");

    auto* run = app.add_subcommand("run", "Cross-validated experiment from a config file");
    run->add_option("--config", config_path, "key=value config file")->required();
    run->add_option("--dataset", dataset, "override config dataset");
    run->add_option("--labels", run_labels, "override config label spec");
    auto* seed_opt = run->add_option("--seed", seed, "override config seed");
    run->add_option("--out", out, "output directory for report files");
    run->add_option("--threads", threads, "fold-level worker threads (0 = auto)");

    auto* compare = app.add_subcommand("compare", "Rank and test >= 2 run reports");
    compare->add_option("reports", report_paths, "report JSON files")->required();
    compare->add_option("--criterion", criterion,
                        "hamming | zero-one | micro-f1 | macro-f1 | all");
    compare->add_option("--out", out, "directory for comparison CSV files");

    auto* correlate = app.add_subcommand("correlate",
                                         "Spearman correlation of losses vs dataset properties");
    correlate->add_option("reports", report_paths, "report JSON files (>= 3)")->required();
    correlate->add_option("--criterion", criterion,
                          "hamming | zero-one | micro-f1 | macro-f1 | all");
    correlate->add_option("--out", out, "directory for correlation CSV files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitConfig : 0;
    }

    try {
        if (stats->parsed()) return cmd_stats(dataset, stats_labels, binarize, out);
        if (run->parsed())
            return cmd_run(config_path, dataset, run_labels, seed, seed_opt->count() > 0, out,
                           threads);
        if (compare->parsed()) return cmd_compare(report_paths, criterion, out);
        if (correlate->parsed()) return cmd_correlate(report_paths, criterion, out);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return 0;
}
