#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mlpw/dataset_stats.hpp"
#include "mlpw/pairwise.hpp"
#include "mlpw/stat_tests.hpp"

namespace mlpw {

inline constexpr int kReportSchemaVersion = 1;

/// Everything a cross-validated run needs. Defaults follow the evaluation
/// protocol: 10-fold CV, 60/40 train/validation split inside each fold,
/// beta = 1, concentration = 2, 20 subspace members on 20% of the features,
/// soft aggregation at theta = 0.5.
struct ExperimentConfig {
    std::string dataset_path;
    std::string label_spec = "last:2";
    bool labels_binarize = false;
    std::string name;  // report row identifier; defaults to the dataset stem
    std::vector<Variant> variants = {Variant::plain, Variant::fcm, Variant::fcm_w,
                                     Variant::fcm_o};
    int folds = 10;
    double t = 0.6;
    std::uint64_t seed = 1;
    LpwConfig lpw;     // beta/theta/rrc/subspace/aggregation/tnorm knobs
    int threads = 0;   // 0 = hardware concurrency, capped by fold count
    std::string out_dir;
};

/// Parses the flat key=value config format (one pair per line, '#' comments).
ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(const std::map<std::string, std::string>& kv);

/// Hash over every algorithm-relevant setting (variants and all LPW knobs,
/// excluding dataset identity, seed, threads and output paths). Comparisons
/// across reports with different hashes fail loudly.
std::uint64_t settings_hash(const ExperimentConfig& cfg);

struct FoldLosses {
    int fold = 0;
    Variant variant = Variant::plain;
    double hamming = 0.0;
    double zero_one = 0.0;
    double micro_f1 = 0.0;
    double macro_f1 = 0.0;

    double by_name(const std::string& criterion) const;
};

struct ExperimentReport {
    ExperimentConfig config;
    DatasetStats stats;
    std::vector<FoldLosses> rows;  // fold-major, variants in config order
    double train_seconds = 0.0;
    double predict_seconds = 0.0;

    /// Mean loss over folds for one variant.
    double mean_loss(Variant v, const std::string& criterion) const;
};

/// Runs the full protocol: per fold, the plain variant trains on the whole
/// fold-train set while corrected variants train on the 60% split and build
/// their fuzzy validation structures from the held-out 40%. Folds execute
/// independently (possibly in parallel); results are identical for any thread
/// count.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Report persistence. The CSV (fold,variant,losses) is byte-stable across
/// reruns; the JSON additionally carries config echo, dataset stats, hashes
/// and wall-clock timings.
void write_report_json(const ExperimentReport& report, const std::string& path);
void write_report_csv(const ExperimentReport& report, const std::string& path);
ExperimentReport read_report_json(const std::string& path);

inline const std::vector<std::string>& criterion_names() {
    static const std::vector<std::string> names = {"hamming", "zero-one", "micro-f1", "macro-f1"};
    return names;
}

struct CriterionComparison {
    std::string criterion;
    LossMatrix losses;               // rows = datasets, cols = variants
    FriedmanResult friedman;
    Eigen::MatrixXd wilcoxon_p;      // upper triangle, NaN elsewhere
    Eigen::MatrixXd wilcoxon_holm;   // Holm-adjusted upper triangle
    double nemenyi_cd = 0.0;         // at alpha = 0.1
};

/// Cross-dataset comparison of >= 2 reports sharing variant sets, settings
/// hash and schema version.
std::vector<CriterionComparison> compare_reports(const std::vector<ExperimentReport>& reports,
                                                 const std::string& criterion /* or "all" */);

struct CorrelationTable {
    std::string criterion;
    std::vector<std::string> property_names;  // N, d, L, LC, LD, avIR, AVsc
    std::vector<std::string> variant_names;
    Eigen::MatrixXd rho;  // property x variant; NaN marks undefined entries
};

/// Spearman correlation between per-dataset losses and dataset properties
/// over >= 3 reports.
std::vector<CorrelationTable> correlate_reports(const std::vector<ExperimentReport>& reports,
                                                const std::string& criterion /* or "all" */);

}  // namespace mlpw
