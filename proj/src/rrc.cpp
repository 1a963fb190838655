#include "mlpw/rrc.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "mlpw/errors.hpp"

namespace mlpw {

namespace {

// Composite Simpson with a midpoint fallback for non-finite endpoint values.
double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
    const double h = (b - a) / intervals;
    auto endpoint = [&](double u, double inward) {
        const double v = f(u);
        return std::isfinite(v) ? v : f(u + inward * h / 2.0);
    };
    double acc = endpoint(a, +1.0) + endpoint(b, -1.0);
    for (int i = 1; i < intervals; ++i) {
        acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    }
    return acc * h / 3.0;
}

// Pr[Delta_h > Delta_o] for independent Delta_h ~ Beta(ph), Delta_o ~ Beta(po):
//   integral of pdf_h(u) * cdf_o(u) du
//     = S([0,1/2], pdf_h * cdf_o) + (1 - cdf_h(1/2)) - S([1/2,1], pdf_h * tail_o).
// Both halves have bounded integrands for c >= 1: near 0 the product decays
// like u^(lh + lo - 1), near 1 like (1-u)^(mh + mo - 1).
double win_probability(const BetaParams& ph, const BetaParams& po, int intervals_per_half) {
    const double log_bh = log_beta(ph.lambda, ph.mu);
    const double log_bo = log_beta(po.lambda, po.mu);
    const double inf = std::numeric_limits<double>::infinity();

    auto lower = [&](double u) {
        if (u == 0.0) {
            const double e = ph.lambda + po.lambda - 1.0;
            if (e > 1e-12) return 0.0;
            if (e >= -1e-12) return std::exp(-log_bh - log_bo) / po.lambda;
            return inf;  // c < 1: handled by the midpoint fallback
        }
        return beta_pdf(u, ph) * beta_cdf(u, po);
    };
    auto upper = [&](double u) {
        if (u == 1.0) {
            const double e = ph.mu + po.mu - 1.0;
            if (e > 1e-12) return 0.0;
            if (e >= -1e-12) return std::exp(-log_bh - log_bo) / po.mu;
            return inf;
        }
        return beta_pdf(u, ph) * beta_tail(u, po);
    };

    const double head = simpson(lower, 0.0, 0.5, intervals_per_half);
    const double tail = simpson(upper, 0.5, 1.0, intervals_per_half);
    return head + beta_tail(0.5, ph) - tail;
}

}  // namespace

RrcProbability rrc_probability(const SupportPair& sp, const RrcConfig& cfg) {
    if (cfg.quad_points < 64)
        throw config_error("rrc_probability: quad_points must be >= 64");

    const BetaParams p1 = beta_params(sp.s_m1, cfg.concentration);
    const BetaParams p2 = beta_params(sp.s_m2, cfg.concentration);

    RrcProbability out;
    if (cfg.linked_supports) {
        out.p_m1 = beta_tail(0.5, p1);
        out.p_m2 = beta_tail(0.5, p2);
    } else {
        int per_half = (cfg.quad_points - 1) / 2;
        per_half += per_half % 2;
        out.p_m1 = win_probability(p1, p2, per_half);
        out.p_m2 = win_probability(p2, p1, per_half);
    }
    if (!std::isfinite(out.p_m1) || !std::isfinite(out.p_m2))
        throw numeric_error("rrc_probability: non-finite quadrature result");
    return out;
}

}  // namespace mlpw
