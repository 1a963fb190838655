#include "mlpw/fuzzy_confusion.hpp"

#include <algorithm>
#include <cmath>

#include "mlpw/errors.hpp"

namespace mlpw {

double neighborhood_membership(const Eigen::VectorXd& z, const Eigen::VectorXd& x, double beta) {
    if (z.size() != x.size()) throw numeric_error("neighborhood_membership: dimension mismatch");
    if (!(beta > 0.0)) throw config_error("neighborhood_membership: beta must be positive");
    return std::exp(-beta * (z - x).squaredNorm());
}

std::pair<double, double> class_weights(const Eigen::MatrixXi& labels, int m1, int m2) {
    double n1 = 0.0;
    double n2 = 0.0;
    for (Eigen::Index i = 0; i < labels.rows(); ++i) {
        const int y1 = labels(i, m1);
        const int y2 = labels(i, m2);
        if (y1 + y2 != 1) continue;
        (y1 ? n1 : n2) += 1.0;
    }
    const double w1 = n1 > 0.0 ? std::min(1.0, n2 / n1) : 1.0;
    const double w2 = n2 > 0.0 ? std::min(1.0, n1 / n2) : 1.0;
    return {w1, w2};
}

FuzzyValidationSet build_fuzzy_validation(
    std::shared_ptr<const Eigen::MatrixXd> points, const Eigen::MatrixXi& labels, int m1, int m2,
    const std::function<SupportPair(const Eigen::VectorXd&)>& support_fn, const RrcConfig& rrc) {
    if (!points || points->rows() != labels.rows())
        throw config_error("build_fuzzy_validation: points/labels mismatch");
    const Eigen::Index n = points->rows();

    FuzzyValidationSet fvs;
    fvs.points = std::move(points);
    fvs.v_m1 = Eigen::ArrayXd::Zero(n);
    fvs.v_m2 = Eigen::ArrayXd::Zero(n);
    fvs.overlap = Eigen::ArrayXd::Zero(n);
    fvs.dreg_m1 = Eigen::ArrayXd::Zero(n);
    fvs.dreg_m2 = Eigen::ArrayXd::Zero(n);

    for (Eigen::Index k = 0; k < n; ++k) {
        const int y1 = labels(k, m1);
        const int y2 = labels(k, m2);
        if (y1 + y2 == 1) {
            (y1 ? fvs.v_m1 : fvs.v_m2)(k) = 1.0;
        } else if (y1 + y2 == 2) {
            fvs.overlap(k) = 0.5;
        }
        const RrcProbability p = rrc_probability(support_fn(fvs.points->row(k)), rrc);
        fvs.dreg_m1(k) = p.p_m1;
        fvs.dreg_m2(k) = p.p_m2;
    }
    std::tie(fvs.w_m1, fvs.w_m2) = class_weights(labels, m1, m2);
    return fvs;
}

FuzzyConfusionMatrix estimate_confusion(const Eigen::VectorXd& z, const FuzzyValidationSet& fvs,
                                        FcmVariant variant, double beta, TNorm tnorm) {
    if (!fvs.points || fvs.points->rows() == 0)
        throw config_error("estimate_confusion: empty validation set");
    if (!(beta > 0.0)) throw config_error("estimate_confusion: beta must be positive");
    const Eigen::ArrayXd neighborhood =
        (-beta * (fvs.points->rowwise() - z.transpose()).rowwise().squaredNorm().array()).exp();
    return estimate_confusion(neighborhood, fvs, variant, tnorm);
}

FuzzyConfusionMatrix estimate_confusion(const Eigen::ArrayXd& neighborhood,
                                        const FuzzyValidationSet& fvs, FcmVariant variant,
                                        TNorm tnorm) {
    const Eigen::Index n = neighborhood.size();
    if (n == 0 || n != fvs.v_m1.size())
        throw config_error("estimate_confusion: neighborhood size mismatch");

    // Effective true-class memberships: the overlap variant keeps
    // double-labeled instances in both classes at 0.5.
    Eigen::ArrayXd v[2] = {fvs.v_m1, fvs.v_m2};
    if (variant == FcmVariant::overlap) {
        v[0] += fvs.overlap;
        v[1] += fvs.overlap;
    }
    const Eigen::ArrayXd* dreg[2] = {&fvs.dreg_m1, &fvs.dreg_m2};

    // Row weights and per-instance denominator weights. The weighted variant
    // scales each true-class row by its class weight and weights the
    // neighborhood cardinality per instance (weight 1 for instances carrying
    // neither or both pair labels).
    double row_w[2] = {1.0, 1.0};
    Eigen::ArrayXd denom_w = Eigen::ArrayXd::Ones(n);
    if (variant == FcmVariant::weighted) {
        row_w[0] = fvs.w_m1;
        row_w[1] = fvs.w_m2;
        denom_w = Eigen::ArrayXd::Ones(n) + fvs.v_m1 * (fvs.w_m1 - 1.0) +
                  fvs.v_m2 * (fvs.w_m2 - 1.0);
    }

    FuzzyConfusionMatrix out;
    double denom = 0.0;
    if (tnorm == TNorm::product) {
        denom = (neighborhood * denom_w).sum();
        if (denom <= 0.0) {
            out.eps.setConstant(0.25);
            out.degenerate = true;
            return out;
        }
        for (int s = 0; s < 2; ++s)
            for (int h = 0; h < 2; ++h)
                out.eps(s, h) = (v[s] * (*dreg[h]) * neighborhood).sum() * row_w[s] / denom;
    } else {
        denom = neighborhood.min(denom_w).sum();
        if (denom <= 0.0) {
            out.eps.setConstant(0.25);
            out.degenerate = true;
            return out;
        }
        for (int s = 0; s < 2; ++s)
            for (int h = 0; h < 2; ++h)
                out.eps(s, h) =
                    v[s].min(*dreg[h]).min(neighborhood).min(row_w[s]).sum() / denom;
    }
    return out;
}

CompetencePair competence(const FuzzyConfusionMatrix& fcm) {
    if ((fcm.eps.array() < 0.0).any())
        throw numeric_error("competence: negative confusion entries");
    CompetencePair out;
    for (int h = 0; h < 2; ++h) {
        const double col = fcm.eps(0, h) + fcm.eps(1, h);
        if (col > 0.0) {
            out.c(0, h) = fcm.eps(0, h) / col;
            out.c(1, h) = 1.0 - out.c(0, h);
        } else {
            out.c(0, h) = 0.5;
            out.c(1, h) = 0.5;
        }
    }
    return out;
}

SupportPair apply_correction(const RrcProbability& rrc, const CompetencePair& comp) {
    return SupportPair{rrc.p_m1 * comp.c(0, 0) + rrc.p_m2 * comp.c(0, 1),
                       rrc.p_m1 * comp.c(1, 0) + rrc.p_m2 * comp.c(1, 1)};
}

}  // namespace mlpw
