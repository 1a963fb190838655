#pragma once

// Monte Carlo reference for the RRC class-assignment probability: samples the
// two beta-distributed supports independently and counts wins. Deliberately
// shares nothing with the quadrature path under test (sampling goes through
// std::gamma_distribution).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace mlpw_test {

struct McEstimate {
    double p = 0.0;
    double se = 0.0;  // binomial standard error
};

inline McEstimate mc_win_probability(double d1, double d2, double concentration,
                                     long long samples, std::uint64_t seed) {
    const double c1 = std::clamp(d1, 1e-6, 1.0 - 1e-6);
    const double c2 = std::clamp(d2, 1e-6, 1.0 - 1e-6);
    std::mt19937_64 rng(seed);
    std::gamma_distribution<double> ga1(concentration * c1, 1.0);
    std::gamma_distribution<double> gb1(concentration * (1.0 - c1), 1.0);
    std::gamma_distribution<double> ga2(concentration * c2, 1.0);
    std::gamma_distribution<double> gb2(concentration * (1.0 - c2), 1.0);

    long long wins = 0;
    for (long long i = 0; i < samples; ++i) {
        const double x1 = ga1(rng);
        const double y1 = gb1(rng);
        const double x2 = ga2(rng);
        const double y2 = gb2(rng);
        const double delta1 = x1 / (x1 + y1);
        const double delta2 = x2 / (x2 + y2);
        if (delta1 > delta2) ++wins;
    }
    McEstimate est;
    est.p = static_cast<double>(wins) / static_cast<double>(samples);
    est.se = std::sqrt(est.p * (1.0 - est.p) / static_cast<double>(samples));
    return est;
}

}  // namespace mlpw_test
