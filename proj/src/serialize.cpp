#include "mlpw/serialize.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "mlpw/errors.hpp"

namespace mlpw {

namespace {

using nlohmann::json;

json vec_to_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Eigen::VectorXd vec_from_json(const json& a) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
    return v;
}

json array_to_json(const Eigen::ArrayXd& v) { return vec_to_json(v.matrix()); }
Eigen::ArrayXd array_from_json(const json& a) { return vec_from_json(a).array(); }

json mat_to_json(const Eigen::MatrixXd& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(i, c));
    j["data"] = std::move(data);
    return j;
}

Eigen::MatrixXd mat_from_json(const json& j) {
    Eigen::MatrixXd m(j.at("rows").get<Eigen::Index>(), j.at("cols").get<Eigen::Index>());
    const json& data = j.at("data");
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(i, c) = data[k++].get<double>();
    return m;
}

json gnb_to_json(const GaussianNb& m) {
    json j;
    j["prior"] = {m.prior(0), m.prior(1)};
    j["constant"] = m.constant;
    if (m.constant) {
        j["constant_support"] = {m.constant_support.s_m1, m.constant_support.s_m2};
    } else {
        j["mean"] = mat_to_json(m.mean);
        j["variance"] = mat_to_json(m.variance);
    }
    return j;
}

GaussianNb gnb_from_json(const json& j) {
    GaussianNb m;
    m.prior = {j.at("prior")[0].get<double>(), j.at("prior")[1].get<double>()};
    m.constant = j.at("constant").get<bool>();
    if (m.constant) {
        m.constant_support = {j.at("constant_support")[0].get<double>(),
                              j.at("constant_support")[1].get<double>()};
    } else {
        m.mean = mat_from_json(j.at("mean"));
        m.variance = mat_from_json(j.at("variance"));
    }
    return m;
}

json ensemble_to_json(const SubspaceEnsemble& ens) {
    json j;
    j["input_dim"] = ens.input_dim;
    j["fraction"] = ens.subspace_fraction;
    json members = json::array();
    for (const auto& m : ens.members) {
        json jm;
        jm["subset"] = m.feature_subset;
        jm["model"] = gnb_to_json(m.model);
        members.push_back(std::move(jm));
    }
    j["members"] = std::move(members);
    return j;
}

SubspaceEnsemble ensemble_from_json(const json& j) {
    SubspaceEnsemble ens;
    ens.input_dim = j.at("input_dim").get<Eigen::Index>();
    ens.subspace_fraction = j.at("fraction").get<double>();
    for (const auto& jm : j.at("members")) {
        SubspaceEnsemble::Member m;
        m.feature_subset = jm.at("subset").get<std::vector<std::size_t>>();
        m.model = gnb_from_json(jm.at("model"));
        ens.members.push_back(std::move(m));
    }
    return ens;
}

json config_to_json(const LpwConfig& cfg) {
    json j;
    j["subspace_members"] = cfg.subspace_members;
    j["subspace_fraction"] = cfg.subspace_fraction;
    j["concentration"] = cfg.rrc.concentration;
    j["quad_points"] = cfg.rrc.quad_points;
    j["rrc_linked"] = cfg.rrc.linked_supports;
    j["beta"] = cfg.beta;
    j["theta"] = cfg.theta;
    j["aggregation"] = cfg.aggregation == Aggregation::soft ? "soft" : "vote";
    j["tnorm"] = cfg.tnorm == TNorm::product ? "product" : "min";
    return j;
}

LpwConfig config_from_json(const json& j) {
    LpwConfig cfg;
    cfg.subspace_members = j.at("subspace_members").get<int>();
    cfg.subspace_fraction = j.at("subspace_fraction").get<double>();
    cfg.rrc.concentration = j.at("concentration").get<double>();
    cfg.rrc.quad_points = j.at("quad_points").get<int>();
    cfg.rrc.linked_supports = j.at("rrc_linked").get<bool>();
    cfg.beta = j.at("beta").get<double>();
    cfg.theta = j.at("theta").get<double>();
    cfg.aggregation =
        j.at("aggregation").get<std::string>() == "vote" ? Aggregation::vote : Aggregation::soft;
    cfg.tnorm = j.at("tnorm").get<std::string>() == "min" ? TNorm::min : TNorm::product;
    return cfg;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void write_json_file(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open '" + path.string() + "' for writing");
    out << j.dump(2) << '\n';
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error(path.string() + ": " + e.what());
    }
    return j;
}

std::string pair_file_name(const PairIndex& p) {
    return "pair_" + std::to_string(p.m1) + "_" + std::to_string(p.m2) + ".json";
}

}  // namespace

void save_model_bundle(const LpwModel& model, const std::string& dir, std::uint64_t seed) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    const json cfg = config_to_json(model.cfg);
    json manifest;
    manifest["schema_version"] = kModelSchemaVersion;
    manifest["label_count"] = model.label_count;
    json pairs = json::array();
    for (const auto& pc : model.classifiers) pairs.push_back({pc.pair.m1, pc.pair.m2});
    manifest["pairs"] = std::move(pairs);
    manifest["config"] = cfg;
    manifest["config_hash"] = fnv1a(cfg.dump());
    manifest["seed"] = seed;
    manifest["scaler"] = {{"mean", vec_to_json(model.scaler.mean)},
                          {"stddev", vec_to_json(model.scaler.stddev)}};
    manifest["has_validation"] = !model.validation.empty();
    write_json_file(manifest, fs::path(dir) / "manifest.json");

    if (!model.validation.empty())
        write_json_file(mat_to_json(*model.val_points), fs::path(dir) / "validation_points.json");

    for (std::size_t m = 0; m < model.classifiers.size(); ++m) {
        const auto& pc = model.classifiers[m];
        json j;
        j["pair"] = {pc.pair.m1, pc.pair.m2};
        j["constant"] = pc.constant;
        if (pc.constant)
            j["constant_support"] = {pc.constant_support.s_m1, pc.constant_support.s_m2};
        else
            j["ensemble"] = ensemble_to_json(pc.ensemble);
        if (!model.validation.empty()) {
            const auto& fvs = model.validation[m];
            j["validation"] = {{"v_m1", array_to_json(fvs.v_m1)},
                               {"v_m2", array_to_json(fvs.v_m2)},
                               {"overlap", array_to_json(fvs.overlap)},
                               {"dreg_m1", array_to_json(fvs.dreg_m1)},
                               {"dreg_m2", array_to_json(fvs.dreg_m2)},
                               {"w", {fvs.w_m1, fvs.w_m2}}};
        }
        write_json_file(j, fs::path(dir) / pair_file_name(pc.pair));
    }
}

LpwModel load_model_bundle(const std::string& dir) {
    namespace fs = std::filesystem;
    const json manifest = read_json_file(fs::path(dir) / "manifest.json");
    if (manifest.at("schema_version").get<int>() != kModelSchemaVersion)
        throw parse_error("model bundle schema version mismatch");

    LpwModel model;
    model.label_count = manifest.at("label_count").get<int>();
    model.cfg = config_from_json(manifest.at("config"));
    model.scaler.mean = vec_from_json(manifest.at("scaler").at("mean"));
    model.scaler.stddev = vec_from_json(manifest.at("scaler").at("stddev"));

    const bool has_validation = manifest.at("has_validation").get<bool>();
    std::shared_ptr<const Eigen::MatrixXd> points;
    if (has_validation)
        points = std::make_shared<Eigen::MatrixXd>(
            mat_from_json(read_json_file(fs::path(dir) / "validation_points.json")));

    for (const auto& jp : manifest.at("pairs")) {
        PairClassifier pc;
        pc.pair = PairIndex{jp[0].get<int>(), jp[1].get<int>()};
        const json j = read_json_file(fs::path(dir) / pair_file_name(pc.pair));
        pc.constant = j.at("constant").get<bool>();
        if (pc.constant)
            pc.constant_support = {j.at("constant_support")[0].get<double>(),
                                   j.at("constant_support")[1].get<double>()};
        else
            pc.ensemble = ensemble_from_json(j.at("ensemble"));
        if (has_validation) {
            const json& jv = j.at("validation");
            FuzzyValidationSet fvs;
            fvs.points = points;
            fvs.v_m1 = array_from_json(jv.at("v_m1"));
            fvs.v_m2 = array_from_json(jv.at("v_m2"));
            fvs.overlap = array_from_json(jv.at("overlap"));
            fvs.dreg_m1 = array_from_json(jv.at("dreg_m1"));
            fvs.dreg_m2 = array_from_json(jv.at("dreg_m2"));
            fvs.w_m1 = jv.at("w")[0].get<double>();
            fvs.w_m2 = jv.at("w")[1].get<double>();
            model.validation.push_back(std::move(fvs));
        }
        model.classifiers.push_back(std::move(pc));
    }
    model.val_points = points;
    return model;
}

}  // namespace mlpw
