#include "catqkd/bell_horodecki.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace catqkd {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 matvec(const CorrelationMatrix& c, const Vec3& v) {
    Vec3 out{};
    for (int i = 0; i < 3; ++i)
        out[i] = c(i, 0) * v[0] + c(i, 1) * v[1] + c(i, 2) * v[2];
    return out;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 as_array(const MeasurementVector& v) { return {v.x(), v.y(), v.z()}; }

Vec3 from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
}

}  // namespace

ChshResult s_max_from_state(const DensityMatrix4& rho) {
    const CorrelationMatrix c = correlation_matrix(rho);
    const SingularTriple triple = svd3(c);
    const double s1 = triple.s[0], s2 = triple.s[1];
    const double hyp = std::hypot(s1, s2);
    const double s_max = 2.0 * hyp;

    if (hyp <= 1e-14) {
        // Fully degenerate correlations: any settings are optimal.
        BellSettings settings{MeasurementVector(1, 0, 0), MeasurementVector(1, 0, 0),
                              MeasurementVector(1, 0, 0), MeasurementVector(0, 1, 0), 0.0};
        return ChshResult{s_max, settings, triple};
    }

    const double cosv = std::clamp(s1 / hyp, 0.0, 1.0);
    const double sinv = std::sqrt(std::max(0.0, 1.0 - cosv * cosv));
    const double varphi = std::acos(cosv);

    const Vec3 l1 = as_array(triple.left[0]);
    const Vec3 l2 = as_array(triple.left[1]);
    auto mix = [&](double sign) {
        return MeasurementVector::normalized(cosv * l1[0] + sign * sinv * l2[0],
                                             cosv * l1[1] + sign * sinv * l2[1],
                                             cosv * l1[2] + sign * sinv * l2[2]);
    };
    BellSettings settings{mix(+1.0), mix(-1.0), triple.right[0], triple.right[1], varphi};
    return ChshResult{s_max, settings, triple};
}

double chsh_value(const DensityMatrix4& rho, const BellSettings& settings) {
    const CorrelationMatrix c = correlation_matrix(rho);
    const Vec3 a1 = as_array(settings.a1), a2 = as_array(settings.a2);
    const Vec3 cb1 = matvec(c, as_array(settings.b1));
    const Vec3 cb2 = matvec(c, as_array(settings.b2));
    return dot(a1, cb1) + dot(a2, cb1) + dot(a1, cb2) - dot(a2, cb2);
}

double s_max_closed_form(const ChannelPoint& pt) {
    const double gr2 = pt.gamma_r() * pt.gamma_r();
    return 2.0 * std::sqrt(1.0 + gr2 * gr2);
}

BellSettings canonical_settings(const ChannelPoint& pt) {
    const double s_max = s_max_closed_form(pt);
    const double cosv = std::clamp(2.0 / s_max, 0.0, 1.0);
    const double sinv = std::sqrt(std::max(0.0, 1.0 - cosv * cosv));
    return BellSettings{MeasurementVector::normalized(cosv, sinv, 0.0),
                        MeasurementVector::normalized(cosv, -sinv, 0.0),
                        MeasurementVector(-1, 0, 0), MeasurementVector(0, -1, 0),
                        std::acos(cosv)};
}

double brute_force_s_max(const DensityMatrix4& rho, int coarse_steps, int refine_iters) {
    if (coarse_steps < 4) throw std::invalid_argument("brute_force_s_max: coarse_steps < 4");
    const CorrelationMatrix c = correlation_matrix(rho);

    // max over a1, a2 for given b1, b2 is |C b1 + C b2| + |C b1 - C b2|.
    auto value = [&](const std::array<double, 4>& ang) {
        const Vec3 cb1 = matvec(c, from_angles(ang[0], ang[1]));
        const Vec3 cb2 = matvec(c, from_angles(ang[2], ang[3]));
        const Vec3 sum{cb1[0] + cb2[0], cb1[1] + cb2[1], cb1[2] + cb2[2]};
        const Vec3 dif{cb1[0] - cb2[0], cb1[1] - cb2[1], cb1[2] - cb2[2]};
        return norm(sum) + norm(dif);
    };

    const int n_az = coarse_steps;
    const int n_pol = std::max(2, coarse_steps / 2);
    const double pi = std::numbers::pi;

    std::array<double, 4> best{0, 0, 0, 0};
    double best_val = -1.0;
    for (int i1 = 0; i1 <= n_pol; ++i1)
        for (int j1 = 0; j1 < n_az; ++j1)
            for (int i2 = 0; i2 <= n_pol; ++i2)
                for (int j2 = 0; j2 < n_az; ++j2) {
                    const std::array<double, 4> ang{pi * i1 / n_pol, 2.0 * pi * j1 / n_az,
                                                    pi * i2 / n_pol, 2.0 * pi * j2 / n_az};
                    const double v = value(ang);
                    if (v > best_val) {
                        best_val = v;
                        best = ang;
                    }
                }

    // Compass search on the four angles; refine_iters counts step halvings.
    double step = pi / n_pol;
    int halvings = 0;
    for (int guard = 0; guard < 100000 && halvings < refine_iters && step > 1e-12; ++guard) {
        bool improved = false;
        for (int k = 0; k < 4; ++k) {
            for (double sign : {+1.0, -1.0}) {
                auto trial = best;
                trial[k] += sign * step;
                const double v = value(trial);
                if (v > best_val) {
                    best_val = v;
                    best = trial;
                    improved = true;
                }
            }
        }
        if (!improved) {
            step *= 0.5;
            ++halvings;
        }
    }
    return best_val;
}

}  // namespace catqkd
