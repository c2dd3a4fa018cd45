#include "catqkd/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "catqkd/bell_horodecki.hpp"

namespace catqkd {

namespace {

const double kTsirelson = 2.0 * std::sqrt(2.0);
const double kGoldenRatio = 0.5 * (std::sqrt(5.0) - 1.0);

// Maximize f over [lo, hi]: coarse scan with the given step to bracket, then
// golden-section. Returns {argmax, max}.
template <typename F>
std::pair<double, double> maximize_1d(F&& f, double lo, double hi, double scan_step,
                                      double x_tol) {
    double best_x = lo, best_f = f(lo);
    const int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / scan_step)));
    for (int i = 1; i <= n; ++i) {
        const double x = lo + (hi - lo) * i / n;
        const double fx = f(x);
        if (fx > best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    double a = std::max(lo, best_x - (hi - lo) / n);
    double b = std::min(hi, best_x + (hi - lo) / n);
    while (b - a > x_tol) {
        const double x1 = b - kGoldenRatio * (b - a);
        const double x2 = a + kGoldenRatio * (b - a);
        if (f(x1) >= f(x2))
            b = x2;
        else
            a = x1;
    }
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm > best_f) {
        best_f = fm;
        best_x = mid;
    }
    return {best_x, best_f};
}

template <typename F>
double bisect_root(F&& f, double lo, double hi, double x_tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw std::runtime_error("bisect_root: no sign change in bracket");
    while (hi - lo > x_tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double binary_entropy(double x) {
    if (!(x >= -1e-12) || !(x <= 1.0 + 1e-12))
        throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
    x = std::clamp(x, 0.0, 1.0);
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double qber(const FilteredState& fs) {
    const MeasurementVector a0(1, 0, 0);
    const MeasurementVector b1(-1, 0, 0);
    return joint_outcome_probs(fs.state, a0, b1).disagree();
}

double holevo_bound(double s) {
    if (s < 2.0 - 1e-9 || s > kTsirelson + 1e-9)
        throw std::invalid_argument("holevo_bound: S outside [2, 2 sqrt 2]");
    s = std::clamp(s, 2.0, kTsirelson);
    const double half_s = 0.5 * s;
    return binary_entropy(0.5 * (1.0 + std::sqrt(half_s * half_s - 1.0)));
}

double devetak_winter(const ChannelPoint& pt) {
    const double gr = pt.gamma_r();
    return 1.0 - binary_entropy(0.5 * (1.0 + gr * gr));
}

double secret_key_fraction(const ChannelPoint& pt) {
    return success_prob_closed_form(pt) * devetak_winter(pt);
}

GammaOptimum optimize_gamma(double transmission, GammaBounds bounds) {
    if (!(transmission > 0.0) || !(transmission <= 1.0))
        throw std::invalid_argument("optimize_gamma: transmission must lie in (0, 1]");
    if (!(bounds.lo > 0.0) || !(bounds.hi < 1.0) || !(bounds.lo < bounds.hi))
        throw std::invalid_argument("optimize_gamma: invalid gamma bounds");
    auto k = [&](double g) { return secret_key_fraction(ChannelPoint(g, transmission)); };
    const auto [g, kv] = maximize_1d(k, bounds.lo, bounds.hi, 1e-3, 1e-10);
    return GammaOptimum{transmission, g, kv};
}

double asymptotic_alpha(double gamma) {
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw std::invalid_argument("asymptotic_alpha: gamma must lie in (0, 1)");
    const double lg = std::log(gamma);
    return lg * lg / (1.0 - gamma * gamma) *
           (1.0 - binary_entropy(0.5 * (1.0 + gamma * gamma)));
}

AlphaOptimum maximize_alpha() {
    const auto [g, a] =
        maximize_1d([](double x) { return asymptotic_alpha(x); }, 1e-6, 1.0 - 1e-6, 1e-3, 1e-12);
    return AlphaOptimum{g, a};
}

BiphotonPoint biphoton_key(double q, double transmission) {
    if (!(q >= 0.0) || !(q <= 0.5))
        throw std::invalid_argument("biphoton_key: QBER must lie in [0, 1/2]");
    if (!(transmission > 0.0) || !(transmission <= 1.0))
        throw std::invalid_argument("biphoton_key: transmission must lie in (0, 1]");
    const double s = kTsirelson * (1.0 - 2.0 * q);
    if (s < 2.0) return BiphotonPoint{q, s, 0.0, false};
    const double bracket = 1.0 - binary_entropy(q) - holevo_bound(s);
    return BiphotonPoint{q, s,
                         transmission * transmission * std::max(0.0, bracket), true};
}

double biphoton_zero_crossing() {
    const double q_s2 = 0.5 * (1.0 - 1.0 / std::sqrt(2.0));  // S(Q) = 2 here
    auto bracket = [](double q) {
        const double s = kTsirelson * (1.0 - 2.0 * q);
        return 1.0 - binary_entropy(q) - holevo_bound(s);
    };
    return bisect_root(bracket, 0.0, q_s2, 1e-12);
}

std::optional<CriticalQber> critical_qber(double transmission) {
    const GammaOptimum opt = optimize_gamma(transmission);
    const double q0 = biphoton_zero_crossing();
    auto f = [&](double q) { return biphoton_key(q, transmission).key_fraction - opt.k_opt; };
    if (f(0.0) <= 0.0 || f(q0) >= 0.0) return std::nullopt;  // no crossover
    // 1e-12 in Q keeps the k_cat = k_biphoton certificate within 1e-8 even at
    // short distances, where the root sits on the steep logarithmic shoulder.
    const double q_crit = bisect_root(f, 0.0, q0, 1e-12);
    return CriticalQber{q_crit, opt.k_opt, biphoton_key(q_crit, transmission).key_fraction};
}

KeyRateReport keyrate_report(const ChannelPoint& pt) {
    KeyRateReport r;
    r.gamma = pt.gamma();
    r.transmission = pt.transmission();
    if (pt.provenance()) r.distance_km = pt.provenance()->distance_km;
    r.p = success_prob_closed_form(pt);
    r.s_max = s_max_closed_form(pt);
    r.qber = qber(filter_pipeline(pt));
    r.holevo = holevo_bound(r.s_max);
    r.r_dw = devetak_winter(pt);
    r.key_fraction = r.p * r.r_dw;
    return r;
}

}  // namespace catqkd
