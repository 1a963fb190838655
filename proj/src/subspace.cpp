#include "mlpw/subspace.hpp"

#include <cmath>

#include "mlpw/errors.hpp"
#include "mlpw/rng.hpp"

namespace mlpw {

SubspaceEnsemble train_subspace_ensemble(const BinaryTrainingSet& ts, int member_count,
                                         double fraction, std::uint64_t seed) {
    const Eigen::Index d = ts.features.cols();
    if (d < 1) throw config_error("subspace: need at least one feature");
    if (member_count < 1) throw config_error("subspace: need at least one member");
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw config_error("subspace: fraction must lie in (0,1]");

    const std::size_t subset_size = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(fraction * static_cast<double>(d))));

    SubspaceEnsemble ens;
    ens.input_dim = d;
    ens.subspace_fraction = fraction;
    ens.members.resize(member_count);
    for (int i = 0; i < member_count; ++i) {
        std::mt19937_64 rng(derive_seed(seed, kSeedMember, static_cast<std::uint64_t>(i)));
        auto& member = ens.members[i];
        member.feature_subset =
            sample_without_replacement(static_cast<std::size_t>(d), subset_size, rng);

        BinaryTrainingSet sub;
        sub.targets = ts.targets;
        sub.features.resize(ts.features.rows(),
                            static_cast<Eigen::Index>(member.feature_subset.size()));
        for (std::size_t j = 0; j < member.feature_subset.size(); ++j)
            sub.features.col(static_cast<Eigen::Index>(j)) =
                ts.features.col(static_cast<Eigen::Index>(member.feature_subset[j]));
        member.model = train_gnb(sub);
    }
    return ens;
}

SupportPair predict_support(const SubspaceEnsemble& ens, const Eigen::VectorXd& x) {
    if (x.size() != ens.input_dim) throw numeric_error("subspace: dimension mismatch");
    double s1 = 0.0;
    double s2 = 0.0;
    Eigen::VectorXd proj;
    for (const auto& member : ens.members) {
        proj.resize(static_cast<Eigen::Index>(member.feature_subset.size()));
        for (std::size_t j = 0; j < member.feature_subset.size(); ++j)
            proj(static_cast<Eigen::Index>(j)) =
                x(static_cast<Eigen::Index>(member.feature_subset[j]));
        const SupportPair p = member.model.posterior(proj);
        s1 += p.s_m1;
        s2 += p.s_m2;
    }
    const double n = static_cast<double>(ens.members.size());
    return SupportPair{s1 / n, s2 / n};
}

}  // namespace mlpw
