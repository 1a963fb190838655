#pragma once

#include <cstdint>
#include <vector>

#include "mlpw/gaussian_nb.hpp"

namespace mlpw {

/// Random Subspace ensemble of Gaussian NB members. Each member trains on a
/// random feature subset of size max(1, round(fraction * d)); subsets are
/// drawn without replacement per member and independently across members.
struct SubspaceEnsemble {
    struct Member {
        std::vector<std::size_t> feature_subset;  // sorted ascending
        GaussianNb model;
    };

    std::vector<Member> members;
    Eigen::Index input_dim = 0;
    double subspace_fraction = 0.2;
};

/// Trains `member_count` members. Member i draws its subset from the engine
/// seeded with derive_seed(seed, kSeedMember, i), so results never depend on
/// training order or parallelism.
SubspaceEnsemble train_subspace_ensemble(const BinaryTrainingSet& ts, int member_count,
                                         double fraction, std::uint64_t seed);

/// Mean of member posteriors. Components are nonnegative and sum to 1.
SupportPair predict_support(const SubspaceEnsemble& ens, const Eigen::VectorXd& x);

}  // namespace mlpw
