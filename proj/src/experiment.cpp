#include "mlpw/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mlpw/errors.hpp"
#include "mlpw/metrics.hpp"
#include "mlpw/rng.hpp"

namespace mlpw {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw config_error("config: bad boolean for '" + key + "': " + v);
}

std::string dataset_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string variants_string(const std::vector<Variant>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ',';
        out += variant_name(vs[i]);
    }
    return out;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::map<std::string, std::string>& kv) {
    ExperimentConfig cfg;
    for (const auto& [key, value] : kv) {
        if (key == "dataset") cfg.dataset_path = value;
        else if (key == "labels") cfg.label_spec = value;
        else if (key == "labels_binarize") cfg.labels_binarize = parse_bool(value, key);
        else if (key == "name") cfg.name = value;
        else if (key == "variants") {
            cfg.variants.clear();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (!item.empty()) cfg.variants.push_back(variant_from_name(item));
            }
        } else if (key == "folds") cfg.folds = std::stoi(value);
        else if (key == "t") cfg.t = std::stod(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "beta") cfg.lpw.beta = std::stod(value);
        else if (key == "theta") cfg.lpw.theta = std::stod(value);
        else if (key == "concentration") cfg.lpw.rrc.concentration = std::stod(value);
        else if (key == "quad_points") cfg.lpw.rrc.quad_points = std::stoi(value);
        else if (key == "rrc_linked") cfg.lpw.rrc.linked_supports = parse_bool(value, key);
        else if (key == "members") cfg.lpw.subspace_members = std::stoi(value);
        else if (key == "fraction") cfg.lpw.subspace_fraction = std::stod(value);
        else if (key == "aggregation") {
            if (value == "soft") cfg.lpw.aggregation = Aggregation::soft;
            else if (value == "vote") cfg.lpw.aggregation = Aggregation::vote;
            else throw config_error("config: aggregation must be soft or vote");
        } else if (key == "tnorm") {
            if (value == "product") cfg.lpw.tnorm = TNorm::product;
            else if (value == "min") cfg.lpw.tnorm = TNorm::min;
            else throw config_error("config: tnorm must be product or min");
        } else if (key == "threads") cfg.threads = std::stoi(value);
        else if (key == "out") cfg.out_dir = value;
        else throw config_error("config: unknown key '" + key + "'");
    }

    if (cfg.dataset_path.empty()) throw config_error("config: 'dataset' is required");
    if (cfg.variants.empty()) throw config_error("config: variant list must not be empty");
    if (!(cfg.t > 0.0 && cfg.t < 1.0)) throw config_error("config: t must lie in (0,1)");
    if (!(cfg.lpw.theta >= 0.0 && cfg.lpw.theta <= 1.0))
        throw config_error("config: theta must lie in [0,1]");
    if (cfg.folds < 2) throw config_error("config: folds must be >= 2");
    if (!(cfg.lpw.beta > 0.0)) throw config_error("config: beta must be positive");
    if (!(cfg.lpw.rrc.concentration > 0.0))
        throw config_error("config: concentration must be positive");
    if (cfg.name.empty()) cfg.name = dataset_stem(cfg.dataset_path);
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw parse_error("config line is not key=value", line_no);
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw parse_error("config line with empty key", line_no);
        if (!kv.emplace(key, value).second)
            throw parse_error("duplicate config key '" + key + "'", line_no);
    }
    return parse_experiment_config(kv);
}

std::uint64_t settings_hash(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "variants=" << variants_string(cfg.variants) << ";folds=" << cfg.folds
       << ";t=" << cfg.t << ";beta=" << cfg.lpw.beta << ";theta=" << cfg.lpw.theta
       << ";concentration=" << cfg.lpw.rrc.concentration
       << ";quad_points=" << cfg.lpw.rrc.quad_points
       << ";rrc_linked=" << cfg.lpw.rrc.linked_supports
       << ";members=" << cfg.lpw.subspace_members
       << ";fraction=" << cfg.lpw.subspace_fraction
       << ";aggregation=" << (cfg.lpw.aggregation == Aggregation::soft ? "soft" : "vote")
       << ";tnorm=" << (cfg.lpw.tnorm == TNorm::product ? "product" : "min");
    return fnv1a(os.str());
}

double FoldLosses::by_name(const std::string& criterion) const {
    if (criterion == "hamming") return hamming;
    if (criterion == "zero-one") return zero_one;
    if (criterion == "micro-f1") return micro_f1;
    if (criterion == "macro-f1") return macro_f1;
    throw config_error("unknown criterion '" + criterion + "'");
}

double ExperimentReport::mean_loss(Variant v, const std::string& criterion) const {
    double sum = 0.0;
    int count = 0;
    for (const auto& row : rows) {
        if (row.variant != v) continue;
        sum += row.by_name(criterion);
        ++count;
    }
    if (count == 0) throw config_error("report has no rows for the requested variant");
    return sum / count;
}

namespace {

struct FoldOutcome {
    std::vector<FoldLosses> rows;
    double train_seconds = 0.0;
    double predict_seconds = 0.0;
};

FoldOutcome run_fold(const ExperimentConfig& cfg, const MultiLabelDataset& ds,
                     const FoldIndices& fold, int fold_idx) {
    using clock = std::chrono::steady_clock;
    const MultiLabelDataset fold_train = subset(ds, fold.train);
    const MultiLabelDataset fold_test = subset(ds, fold.test);

    const bool want_plain = std::find(cfg.variants.begin(), cfg.variants.end(),
                                      Variant::plain) != cfg.variants.end();
    std::vector<Variant> corrected;
    for (Variant v : cfg.variants)
        if (v != Variant::plain) corrected.push_back(v);

    FoldOutcome out;
    const auto t0 = clock::now();

    // The reference (plain) pipeline trains on the whole fold-train set; the
    // corrected pipelines train on the t-fraction and estimate confusion
    // matrices from the held-out validation part.
    LpwModel plain_model;
    if (want_plain)
        plain_model = train_lpw(fold_train, cfg.lpw,
                                derive_seed(cfg.seed, kSeedPlain, fold_idx));
    LpwModel corr_model;
    if (!corrected.empty()) {
        SplitSpec split{cfg.t, derive_seed(cfg.seed, kSeedSplit, fold_idx), cfg.folds};
        auto [train_part, validation_part] = split_train_validation(fold_train, split);
        corr_model =
            train_lpw(train_part, cfg.lpw, derive_seed(cfg.seed, kSeedCorrected, fold_idx));
        attach_validation(corr_model, validation_part);
    }
    const auto t1 = clock::now();

    std::map<Variant, Eigen::MatrixXi> predictions;
    for (Variant v : cfg.variants)
        predictions[v] = Eigen::MatrixXi::Zero(fold_test.n(), fold_test.l());

    for (Eigen::Index i = 0; i < fold_test.n(); ++i) {
        const Eigen::VectorXd x = fold_test.features.row(i);
        if (want_plain)
            predictions[Variant::plain].row(i) =
                predict(plain_model, x, Variant::plain).relevant.transpose();
        if (!corrected.empty()) {
            const auto preds = predict_variants(corr_model, x, corrected);
            for (std::size_t vi = 0; vi < corrected.size(); ++vi)
                predictions[corrected[vi]].row(i) = preds[vi].relevant.transpose();
        }
    }
    const auto t2 = clock::now();

    for (Variant v : cfg.variants) {
        FoldLosses row;
        row.fold = fold_idx;
        row.variant = v;
        row.hamming = hamming_loss(fold_test.labels, predictions[v]);
        row.zero_one = zero_one_loss(fold_test.labels, predictions[v]);
        row.micro_f1 = micro_f1_loss(fold_test.labels, predictions[v]);
        row.macro_f1 = macro_f1_loss(fold_test.labels, predictions[v]);
        out.rows.push_back(row);
    }
    out.train_seconds = std::chrono::duration<double>(t1 - t0).count();
    out.predict_seconds = std::chrono::duration<double>(t2 - t1).count();
    return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    const MultiLabelDataset ds = [&] {
        LabelSpec spec = parse_label_spec(cfg.label_spec);
        spec.binarize = cfg.labels_binarize;
        return load_dataset(cfg.dataset_path, spec);
    }();

    ExperimentReport report;
    report.config = cfg;
    report.stats = compute_stats(ds);

    const auto folds = kfold_indices(static_cast<std::size_t>(ds.n()), cfg.folds,
                                     derive_seed(cfg.seed, kSeedKfold));

    std::vector<FoldOutcome> outcomes(folds.size());
    int threads = cfg.threads > 0 ? cfg.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, static_cast<int>(folds.size()));

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&](int first) {
        for (std::size_t f = first; f < folds.size(); f += threads) {
            try {
                outcomes[f] = run_fold(cfg, ds, folds[f], static_cast<int>(f));
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (const auto& outcome : outcomes) {
        report.rows.insert(report.rows.end(), outcome.rows.begin(), outcome.rows.end());
        report.train_seconds += outcome.train_seconds;
        report.predict_seconds += outcome.predict_seconds;
    }
    return report;
}

namespace {

json stats_to_json(const DatasetStats& s) {
    return json{{"n", s.n},   {"d", s.d},       {"l", s.l},        {"lc", s.lc},
                {"ld", s.ld}, {"avir", s.avir}, {"avgsc", s.avgsc}};
}

DatasetStats stats_from_json(const json& j) {
    DatasetStats s;
    s.n = j.at("n").get<Eigen::Index>();
    s.d = j.at("d").get<Eigen::Index>();
    s.l = j.at("l").get<Eigen::Index>();
    s.lc = j.at("lc").get<double>();
    s.ld = j.at("ld").get<double>();
    s.avir = j.at("avir").get<double>();
    s.avgsc = j.at("avgsc").get<double>();
    return s;
}

}  // namespace

void write_report_json(const ExperimentReport& report, const std::string& path) {
    const ExperimentConfig& cfg = report.config;
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["settings_hash"] = settings_hash(cfg);
    j["config"] = {{"dataset", cfg.dataset_path},
                   {"labels", cfg.label_spec},
                   {"labels_binarize", cfg.labels_binarize},
                   {"name", cfg.name},
                   {"variants", variants_string(cfg.variants)},
                   {"folds", cfg.folds},
                   {"t", cfg.t},
                   {"seed", cfg.seed},
                   {"beta", cfg.lpw.beta},
                   {"theta", cfg.lpw.theta},
                   {"concentration", cfg.lpw.rrc.concentration},
                   {"quad_points", cfg.lpw.rrc.quad_points},
                   {"rrc_linked", cfg.lpw.rrc.linked_supports},
                   {"members", cfg.lpw.subspace_members},
                   {"fraction", cfg.lpw.subspace_fraction},
                   {"aggregation", cfg.lpw.aggregation == Aggregation::soft ? "soft" : "vote"},
                   {"tnorm", cfg.lpw.tnorm == TNorm::product ? "product" : "min"}};
    j["dataset"] = {{"path", cfg.dataset_path},
                    {"name", cfg.name},
                    {"stats", stats_to_json(report.stats)}};
    json rows = json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"fold", row.fold},
                        {"variant", variant_name(row.variant)},
                        {"losses",
                         {{"hamming", row.hamming},
                          {"zero_one", row.zero_one},
                          {"micro_f1", row.micro_f1},
                          {"macro_f1", row.macro_f1}}}});
    }
    j["folds"] = std::move(rows);
    j["timing_sec"] = {{"train", report.train_seconds},
                       {"predict", report.predict_seconds}};
    std::ofstream out(path);
    if (!out) throw config_error("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

void write_report_csv(const ExperimentReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open '" + path + "' for writing");
    out << "fold,variant,hamming,zero_one,micro_f1,macro_f1\n";
    char buf[40];
    for (const auto& row : report.rows) {
        out << row.fold << ',' << variant_name(row.variant);
        for (double v : {row.hamming, row.zero_one, row.micro_f1, row.macro_f1}) {
            std::snprintf(buf, sizeof buf, "%.12g", v);
            out << ',' << buf;
        }
        out << '\n';
    }
}

ExperimentReport read_report_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open report '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    if (j.at("schema_version").get<int>() != kReportSchemaVersion)
        throw config_error("report '" + path + "': schema version mismatch");

    ExperimentReport report;
    const json& c = j.at("config");
    std::map<std::string, std::string> kv;
    kv["dataset"] = c.at("dataset").get<std::string>();
    kv["labels"] = c.at("labels").get<std::string>();
    kv["labels_binarize"] = c.at("labels_binarize").get<bool>() ? "true" : "false";
    kv["name"] = c.at("name").get<std::string>();
    kv["variants"] = c.at("variants").get<std::string>();
    kv["folds"] = std::to_string(c.at("folds").get<int>());
    kv["t"] = std::to_string(c.at("t").get<double>());
    kv["seed"] = std::to_string(c.at("seed").get<std::uint64_t>());
    kv["beta"] = std::to_string(c.at("beta").get<double>());
    kv["theta"] = std::to_string(c.at("theta").get<double>());
    kv["concentration"] = std::to_string(c.at("concentration").get<double>());
    kv["quad_points"] = std::to_string(c.at("quad_points").get<int>());
    kv["rrc_linked"] = c.at("rrc_linked").get<bool>() ? "true" : "false";
    kv["members"] = std::to_string(c.at("members").get<int>());
    kv["fraction"] = std::to_string(c.at("fraction").get<double>());
    kv["aggregation"] = c.at("aggregation").get<std::string>();
    kv["tnorm"] = c.at("tnorm").get<std::string>();
    report.config = parse_experiment_config(kv);
    report.stats = stats_from_json(j.at("dataset").at("stats"));
    for (const auto& row : j.at("folds")) {
        FoldLosses fl;
        fl.fold = row.at("fold").get<int>();
        fl.variant = variant_from_name(row.at("variant").get<std::string>());
        fl.hamming = row.at("losses").at("hamming").get<double>();
        fl.zero_one = row.at("losses").at("zero_one").get<double>();
        fl.micro_f1 = row.at("losses").at("micro_f1").get<double>();
        fl.macro_f1 = row.at("losses").at("macro_f1").get<double>();
        report.rows.push_back(fl);
    }
    return report;
}

std::vector<CriterionComparison> compare_reports(const std::vector<ExperimentReport>& reports,
                                                 const std::string& criterion) {
    if (reports.size() < 2) throw config_error("compare: need at least 2 reports");
    const auto& ref = reports.front();
    for (const auto& r : reports) {
        if (r.config.variants != ref.config.variants)
            throw config_error("compare: reports have mismatched variant sets");
        if (settings_hash(r.config) != settings_hash(ref.config))
            throw config_error("compare: reports were produced with different settings");
    }

    std::vector<std::string> wanted;
    if (criterion == "all") wanted = criterion_names();
    else wanted.push_back(criterion);

    const auto& variants = ref.config.variants;
    const int k = static_cast<int>(variants.size());
    const int n = static_cast<int>(reports.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<CriterionComparison> out;
    for (const auto& crit : wanted) {
        CriterionComparison cc;
        cc.criterion = crit;
        cc.losses.col_names.reserve(variants.size());
        for (Variant v : variants) cc.losses.col_names.push_back(variant_name(v));
        cc.losses.values.resize(n, k);
        for (int i = 0; i < n; ++i) {
            cc.losses.row_names.push_back(reports[i].config.name);
            for (int j = 0; j < k; ++j)
                cc.losses.values(i, j) = reports[i].mean_loss(variants[j], crit);
        }
        if (k >= 2 && n >= 2) cc.friedman = friedman_test(cc.losses.values);
        cc.wilcoxon_p = Eigen::MatrixXd::Constant(k, k, nan);
        cc.wilcoxon_holm = Eigen::MatrixXd::Constant(k, k, nan);
        std::vector<double> family;
        std::vector<std::pair<int, int>> cells;
        for (int a = 0; a < k; ++a) {
            for (int b = a + 1; b < k; ++b) {
                const double p =
                    wilcoxon_signed_rank(cc.losses.values.col(a), cc.losses.values.col(b));
                cc.wilcoxon_p(a, b) = p;
                family.push_back(p);
                cells.emplace_back(a, b);
            }
        }
        const auto adjusted = holm_adjust(family);
        for (std::size_t i = 0; i < cells.size(); ++i)
            cc.wilcoxon_holm(cells[i].first, cells[i].second) = adjusted[i];
        if (k >= 2 && k <= 10) cc.nemenyi_cd = nemenyi_critical_difference(k, n, 0.1);
        out.push_back(std::move(cc));
    }
    return out;
}

std::vector<CorrelationTable> correlate_reports(const std::vector<ExperimentReport>& reports,
                                                const std::string& criterion) {
    if (reports.size() < 3) throw config_error("correlate: need at least 3 reports");
    const auto& ref = reports.front();
    for (const auto& r : reports)
        if (r.config.variants != ref.config.variants)
            throw config_error("correlate: reports have mismatched variant sets");

    std::vector<std::string> wanted;
    if (criterion == "all") wanted = criterion_names();
    else wanted.push_back(criterion);

    static const std::vector<std::string> props = {"N", "d", "L", "LC", "LD", "avIR", "AVsc"};
    const int n = static_cast<int>(reports.size());
    Eigen::MatrixXd prop_values(n, static_cast<int>(props.size()));
    for (int i = 0; i < n; ++i) {
        const DatasetStats& s = reports[i].stats;
        prop_values.row(i) << static_cast<double>(s.n), static_cast<double>(s.d),
            static_cast<double>(s.l), s.lc, s.ld, s.avir, s.avgsc;
    }

    std::vector<CorrelationTable> out;
    for (const auto& crit : wanted) {
        CorrelationTable table;
        table.criterion = crit;
        table.property_names = props;
        for (Variant v : ref.config.variants) table.variant_names.push_back(variant_name(v));
        table.rho.resize(static_cast<int>(props.size()),
                         static_cast<int>(ref.config.variants.size()));
        for (std::size_t vi = 0; vi < ref.config.variants.size(); ++vi) {
            Eigen::VectorXd losses(n);
            for (int i = 0; i < n; ++i)
                losses(i) = reports[i].mean_loss(ref.config.variants[vi], crit);
            for (std::size_t pi = 0; pi < props.size(); ++pi)
                table.rho(static_cast<int>(pi), static_cast<int>(vi)) =
                    spearman(prop_values.col(static_cast<int>(pi)), losses);
        }
        out.push_back(std::move(table));
    }
    return out;
}

}  // namespace mlpw
