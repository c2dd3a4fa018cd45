#pragma once

#include <optional>

#include "catqkd/cat_protocol.hpp"
#include "catqkd/filtering.hpp"

namespace catqkd {

/// h(x) = -x log2 x - (1-x) log2 (1-x), h(0) = h(1) = 0.
double binary_entropy(double x);

/// Q = P(a0 != b1) for the key settings A0 = sigma_x, B1 = -sigma_x, from the
/// joint outcome distribution of the filtered state. Exactly zero for this
/// protocol's filtered states.
double qber(const FilteredState& fs);

/// Eavesdropper bound from the Bell violation:
/// chi <= h((1 + sqrt((S/2)^2 - 1))/2) for S in [2, 2 sqrt 2]
/// (overshoot up to 1e-9 is clamped).
double holevo_bound(double s);

/// r_DW = 1 - h((1 + gamma^{2(1-T)})/2); the A0/B1 mutual information is 1
/// because the QBER vanishes.
double devetak_winter(const ChannelPoint& pt);

/// K = p * r_DW.
double secret_key_fraction(const ChannelPoint& pt);

struct GammaBounds {
    double lo = 1e-6;
    double hi = 1.0 - 1e-6;
};

struct GammaOptimum {
    double transmission;
    double gamma_opt;
    double k_opt;
};

/// Maximizes K(gamma, T) over gamma: coarse scan (step 1e-3) to bracket the
/// maximum, then golden-section refinement.
GammaOptimum optimize_gamma(double transmission, GammaBounds bounds = {});

/// Small-T scaling coefficient of the optimal key fraction, K ~ alpha T^2:
/// alpha(gamma) = ln^2(gamma)/(1-gamma^2) * (1 - h((1+gamma^2)/2)).
double asymptotic_alpha(double gamma);

struct AlphaOptimum {
    double gamma_star;
    double alpha_star;
};

AlphaOptimum maximize_alpha();

/// Key fraction of the biphoton/depolarizing-channel reference protocol:
/// K = T^2 (1 - h(Q) - h((1+sqrt((S/2)^2-1))/2)) with S = 2 sqrt(2) (1-2Q),
/// clamped below at zero. usable is false once S < 2 (Q too large for any
/// violation), in which case the key fraction is 0.
struct BiphotonPoint {
    double qber;
    double s;
    double key_fraction;
    bool usable;
};

BiphotonPoint biphoton_key(double q, double transmission);

/// Root of 1 - h(Q) - h((1+sqrt((S/2)^2-1))/2); the largest QBER at which the
/// biphoton protocol retains any key.
double biphoton_zero_crossing();

struct CriticalQber {
    double q_crit;
    double k_cat;       // optimize_gamma(T).k_opt
    double k_biphoton;  // biphoton key at q_crit (equals k_cat at the root)
};

/// Solves biphoton_key(Q, T) = optimize_gamma(T).k_opt by bisection on
/// [0, biphoton_zero_crossing()] to |dQ| <= 1e-12. Empty if the bracket has
/// no sign change (no crossover).
std::optional<CriticalQber> critical_qber(double transmission);

/// Everything the CSV sweep reports for one channel point.
struct KeyRateReport {
    double gamma;
    double transmission;
    std::optional<double> distance_km;
    double p;
    double s_max;
    double qber;
    double holevo;
    double r_dw;
    double key_fraction;
};

KeyRateReport keyrate_report(const ChannelPoint& pt);

}  // namespace catqkd
