#include "mlpw/pairwise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlpw/errors.hpp"
#include "mlpw/rng.hpp"

namespace mlpw {

std::vector<PairIndex> enumerate_pairs(int label_count) {
    if (label_count < 2) throw config_error("enumerate_pairs: need at least 2 labels");
    std::vector<PairIndex> pairs;
    pairs.reserve(static_cast<std::size_t>(label_count) * (label_count - 1) / 2);
    for (int a = 0; a < label_count; ++a)
        for (int b = a + 1; b < label_count; ++b) pairs.push_back(PairIndex{a, b});
    return pairs;
}

BinaryTrainingSet pairwise_training_set(const MultiLabelDataset& ds, const PairIndex& pair) {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        if (ds.labels(i, pair.m1) + ds.labels(i, pair.m2) == 1) rows.push_back(i);
    }
    BinaryTrainingSet ts;
    ts.features.resize(static_cast<Eigen::Index>(rows.size()), ds.d());
    ts.targets.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        ts.features.row(static_cast<Eigen::Index>(r)) = ds.features.row(rows[r]);
        ts.targets(static_cast<Eigen::Index>(r)) = ds.labels(rows[r], pair.m2);
    }
    return ts;
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::plain: return "plain";
        case Variant::fcm: return "fcm";
        case Variant::fcm_w: return "fcm-w";
        case Variant::fcm_o: return "fcm-o";
    }
    return "?";
}

Variant variant_from_name(const std::string& name) {
    if (name == "plain") return Variant::plain;
    if (name == "fcm") return Variant::fcm;
    if (name == "fcm-w") return Variant::fcm_w;
    if (name == "fcm-o") return Variant::fcm_o;
    throw config_error("unknown variant '" + name + "'");
}

PairSeeder default_pair_seeder(std::uint64_t base_seed) {
    return [base_seed](const PairIndex&, std::size_t ordinal) {
        return derive_seed(base_seed, ordinal);
    };
}

LpwModel train_lpw(const MultiLabelDataset& train, const LpwConfig& cfg, std::uint64_t seed) {
    return train_lpw(train, cfg, default_pair_seeder(seed));
}

LpwModel train_lpw(const MultiLabelDataset& train, const LpwConfig& cfg,
                   const PairSeeder& seeder) {
    if (train.l() < 2) throw config_error("train_lpw: need at least 2 labels");

    LpwModel model;
    model.cfg = cfg;
    model.label_count = static_cast<int>(train.l());
    model.scaler = fit_scaler(train);
    const MultiLabelDataset train_std = model.scaler.apply(train);

    const auto pairs = enumerate_pairs(model.label_count);
    model.classifiers.resize(pairs.size());
    for (std::size_t m = 0; m < pairs.size(); ++m) {
        PairClassifier& pc = model.classifiers[m];
        pc.pair = pairs[m];
        const BinaryTrainingSet ts = pairwise_training_set(train_std, pairs[m]);
        double n1 = 0.0;
        double n2 = 0.0;
        for (Eigen::Index i = 0; i < ts.targets.size(); ++i)
            (ts.targets(i) == 0 ? n1 : n2) += 1.0;
        if (n1 == 0.0 || n2 == 0.0) {
            // Degenerate pairwise set: constant member emitting the empirical
            // pair prior, or uniform when the pair never occurs exclusively.
            pc.constant = true;
            const double total = n1 + n2;
            pc.constant_support =
                total > 0.0 ? SupportPair{n1 / total, n2 / total} : SupportPair{0.5, 0.5};
            continue;
        }
        pc.ensemble = train_subspace_ensemble(ts, cfg.subspace_members, cfg.subspace_fraction,
                                              seeder(pairs[m], m));
    }
    return model;
}

void attach_validation(LpwModel& model, const MultiLabelDataset& validation) {
    if (validation.l() != model.label_count)
        throw config_error("attach_validation: label count mismatch");
    auto points = std::make_shared<Eigen::MatrixXd>(model.scaler.apply(validation.features));
    model.val_points = points;
    model.validation.clear();
    model.validation.reserve(model.classifiers.size());
    for (const auto& pc : model.classifiers) {
        model.validation.push_back(build_fuzzy_validation(
            points, validation.labels, pc.pair.m1, pc.pair.m2,
            [&pc](const Eigen::VectorXd& x) { return pc.support(x); }, model.cfg.rrc));
    }
}

LabelRanking aggregate_soft(const std::vector<SupportPair>& supports,
                            const std::vector<PairIndex>& pairs, int label_count) {
    if (supports.size() != pairs.size())
        throw config_error("aggregate_soft: one support per pair required");
    LabelRanking r;
    r.scores = Eigen::VectorXd::Zero(label_count);
    for (std::size_t m = 0; m < pairs.size(); ++m) {
        r.scores(pairs[m].m1) += supports[m].s_m1;
        r.scores(pairs[m].m2) += supports[m].s_m2;
    }
    r.scores /= static_cast<double>(label_count - 1);
    return r;
}

LabelRanking aggregate_votes(const std::vector<SupportPair>& supports,
                             const std::vector<PairIndex>& pairs, int label_count) {
    if (supports.size() != pairs.size())
        throw config_error("aggregate_votes: one support per pair required");
    LabelRanking r;
    r.scores = Eigen::VectorXd::Zero(label_count);
    for (std::size_t m = 0; m < pairs.size(); ++m) {
        // Tie goes to the lower label index (m1 < m2 by construction).
        if (supports[m].s_m1 >= supports[m].s_m2)
            r.scores(pairs[m].m1) += 1.0;
        else
            r.scores(pairs[m].m2) += 1.0;
    }
    r.scores /= static_cast<double>(label_count - 1);
    return r;
}

Prediction threshold(const LabelRanking& ranking, double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw config_error("threshold: theta outside [0,1]");
    Prediction p;
    p.ranking = ranking;
    p.relevant.resize(ranking.scores.size());
    for (Eigen::Index i = 0; i < ranking.scores.size(); ++i)
        p.relevant(i) = ranking.scores(i) > theta ? 1 : 0;
    return p;
}

SupportPair corrected_support(const Eigen::VectorXd& x_std, const PairClassifier& classifier,
                              const FuzzyValidationSet& fvs, const RrcConfig& rrc, double beta,
                              FcmVariant variant, TNorm tnorm) {
    const RrcProbability p = rrc_probability(classifier.support(x_std), rrc);
    const FuzzyConfusionMatrix fcm = estimate_confusion(x_std, fvs, variant, beta, tnorm);
    return apply_correction(p, competence(fcm));
}

namespace {

FcmVariant fcm_variant_of(Variant v) {
    switch (v) {
        case Variant::fcm: return FcmVariant::plain;
        case Variant::fcm_w: return FcmVariant::weighted;
        case Variant::fcm_o: return FcmVariant::overlap;
        default: throw config_error("plain variant has no confusion estimator");
    }
}

}  // namespace

std::vector<Prediction> predict_variants(const LpwModel& model, const Eigen::VectorXd& x,
                                         const std::vector<Variant>& variants) {
    if (variants.empty()) throw config_error("predict_variants: empty variant list");
    const bool corrected = std::any_of(variants.begin(), variants.end(),
                                       [](Variant v) { return v != Variant::plain; });
    if (corrected && model.validation.size() != model.classifiers.size())
        throw config_error("predict_variants: model has no validation structures attached");

    const Eigen::VectorXd xs = model.scaler.apply(x);
    const auto pairs = enumerate_pairs(model.label_count);

    std::vector<SupportPair> raw(pairs.size());
    std::vector<RrcProbability> rrc(corrected ? pairs.size() : 0);
    for (std::size_t m = 0; m < pairs.size(); ++m) {
        raw[m] = model.classifiers[m].support(xs);
        if (corrected) rrc[m] = rrc_probability(raw[m], model.cfg.rrc);
    }

    // One neighborhood vector serves every pair and variant at this query.
    Eigen::ArrayXd neighborhood;
    if (corrected) {
        neighborhood = (-model.cfg.beta *
                        (model.val_points->rowwise() - xs.transpose())
                            .rowwise()
                            .squaredNorm()
                            .array())
                           .exp();
    }

    std::vector<Prediction> out;
    out.reserve(variants.size());
    std::vector<SupportPair> supports(pairs.size());
    for (Variant v : variants) {
        if (v == Variant::plain) {
            supports = raw;
        } else {
            const FcmVariant fv = fcm_variant_of(v);
            for (std::size_t m = 0; m < pairs.size(); ++m) {
                const FuzzyConfusionMatrix fcm =
                    estimate_confusion(neighborhood, model.validation[m], fv, model.cfg.tnorm);
                supports[m] = apply_correction(rrc[m], competence(fcm));
            }
        }
        const LabelRanking ranking = model.cfg.aggregation == Aggregation::soft
                                         ? aggregate_soft(supports, pairs, model.label_count)
                                         : aggregate_votes(supports, pairs, model.label_count);
        out.push_back(threshold(ranking, model.cfg.theta));
    }
    return out;
}

Prediction predict(const LpwModel& model, const Eigen::VectorXd& x, Variant variant) {
    return predict_variants(model, x, {variant}).front();
}

Prediction predict(const LpwModel& model, const Eigen::VectorXd& x, Variant variant,
                   Aggregation aggregation) {
    LpwModel view = model;  // cheap: matrices are shared via the validation pointers
    view.cfg.aggregation = aggregation;
    return predict(view, x, variant);
}

}  // namespace mlpw
