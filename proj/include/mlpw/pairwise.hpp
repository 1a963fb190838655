#pragma once

#include <cstdint>
#include <vector>

#include "mlpw/dataset.hpp"
#include "mlpw/fuzzy_confusion.hpp"
#include "mlpw/preprocessing.hpp"
#include "mlpw/rrc.hpp"
#include "mlpw/subspace.hpp"

namespace mlpw {

/// One unordered label pair; indices are 0-based with m1 < m2. The ordinal of
/// a pair is its position in the enumeration (0,1),(0,2),...,(1,2),...
struct PairIndex {
    int m1 = 0;
    int m2 = 1;
};

/// Fixed pair enumeration for L labels; L*(L-1)/2 entries.
std::vector<PairIndex> enumerate_pairs(int label_count);

/// Pairwise member: either a trained subspace ensemble or, when the pairwise
/// training set is empty or single-class, a constant classifier emitting the
/// empirical pair prior (or (1/2, 1/2) when both counts are zero).
struct PairClassifier {
    PairIndex pair;
    bool constant = false;
    SupportPair constant_support = {0.5, 0.5};
    SubspaceEnsemble ensemble;

    SupportPair support(const Eigen::VectorXd& x) const {
        return constant ? constant_support : predict_support(ensemble, x);
    }
};

/// Instances carrying exactly one of the pair's labels; target 0 for m1,
/// 1 for m2. May be empty.
BinaryTrainingSet pairwise_training_set(const MultiLabelDataset& ds, const PairIndex& pair);

enum class Variant { plain, fcm, fcm_w, fcm_o };
enum class Aggregation { soft, vote };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct LpwConfig {
    int subspace_members = 20;
    double subspace_fraction = 0.2;
    RrcConfig rrc;
    double beta = 1.0;   // neighborhood spread
    double theta = 0.5;  // acceptance threshold
    Aggregation aggregation = Aggregation::soft;
    TNorm tnorm = TNorm::product;
};

/// Trained label-pairwise model. `validation` is populated only for models
/// that will run corrected variants; the plain pipeline never touches it.
struct LpwModel {
    LpwConfig cfg;
    int label_count = 0;
    FeatureScaler scaler;
    std::vector<PairClassifier> classifiers;        // enumeration order
    std::shared_ptr<const Eigen::MatrixXd> val_points;  // standardized validation features
    std::vector<FuzzyValidationSet> validation;     // per pair, same order
};

/// Supplies the per-pair training seed; the default derives from a base seed
/// via the documented scheme. Exposed so tests can remap seeds under label
/// permutations.
using PairSeeder = std::function<std::uint64_t(const PairIndex&, std::size_t ordinal)>;

PairSeeder default_pair_seeder(std::uint64_t base_seed);

/// Trains the pairwise members on `train` (scaler fitted on the same set).
LpwModel train_lpw(const MultiLabelDataset& train, const LpwConfig& cfg, std::uint64_t seed);
LpwModel train_lpw(const MultiLabelDataset& train, const LpwConfig& cfg, const PairSeeder& seeder);

/// Builds per-pair fuzzy validation structures from a raw validation set
/// (standardized with the model scaler, RRC evaluated with the model config).
void attach_validation(LpwModel& model, const MultiLabelDataset& validation);

struct LabelRanking {
    Eigen::VectorXd scores;  // length L, entries in [0,1], sum L/2
};

struct Prediction {
    Eigen::VectorXi relevant;  // entries in {0,1}
    LabelRanking ranking;
};

/// Normalized total support: score_i = sum of i's supports over its pairs / (L-1).
LabelRanking aggregate_soft(const std::vector<SupportPair>& supports,
                            const std::vector<PairIndex>& pairs, int label_count);

/// Normalized vote counts; a tied pair votes for its lower label index.
LabelRanking aggregate_votes(const std::vector<SupportPair>& supports,
                             const std::vector<PairIndex>& pairs, int label_count);

/// relevant_i = [score_i > theta] (strict).
Prediction threshold(const LabelRanking& ranking, double theta);

/// Corrected pairwise support at a standardized query point (Eq.-10-style
/// pipeline: RRC, local confusion estimate, competence, mixture).
SupportPair corrected_support(const Eigen::VectorXd& x_std, const PairClassifier& classifier,
                              const FuzzyValidationSet& fvs, const RrcConfig& rrc,
                              double beta, FcmVariant variant, TNorm tnorm = TNorm::product);

/// Full prediction for a raw (unstandardized) query point.
Prediction predict(const LpwModel& model, const Eigen::VectorXd& x, Variant variant);
Prediction predict(const LpwModel& model, const Eigen::VectorXd& x, Variant variant,
                   Aggregation aggregation);

/// Predictions for several variants at once, sharing the per-pair supports,
/// RRC probabilities and neighborhood vectors across variants.
std::vector<Prediction> predict_variants(const LpwModel& model, const Eigen::VectorXd& x,
                                         const std::vector<Variant>& variants);

}  // namespace mlpw
