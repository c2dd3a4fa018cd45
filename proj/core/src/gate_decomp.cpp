#include "catqkd/gate_decomp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace catqkd {

namespace {

double wrap_to_pi(double a) {
    const double pi = std::numbers::pi;
    a = std::fmod(a, 2.0 * pi);
    if (a <= -pi)
        a += 2.0 * pi;
    else if (a > pi)
        a -= 2.0 * pi;
    return a;
}

}  // namespace

BasisRotation::BasisRotation(cplx c, cplx d) : c_(c), d_(d) {
    const double n2 = std::norm(c) + std::norm(d);
    if (std::abs(n2 - 1.0) > 1e-12)
        throw std::invalid_argument("BasisRotation: |c|^2 + |d|^2 must be 1 to 1e-12");
}

Mat2c rotation_matrix(const BasisRotation& rot) {
    Mat2c u;
    u(0, 0) = std::conj(rot.c());
    u(0, 1) = std::conj(rot.d());
    u(1, 0) = rot.d();
    u(1, 1) = -rot.c();
    return u;
}

Mat2c rz(double angle) {
    Mat2c m;
    m(0, 0) = std::polar(1.0, -0.5 * angle);
    m(1, 1) = std::polar(1.0, 0.5 * angle);
    return m;
}

Mat2c hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    Mat2c h;
    h(0, 0) = r;
    h(0, 1) = r;
    h(1, 0) = r;
    h(1, 1) = -r;
    return h;
}

EulerAngles euler_angles(const BasisRotation& rot) {
    const double half_pi = 0.5 * std::numbers::pi;
    const double xi = (rot.c() == cplx(0.0)) ? 0.0 : std::arg(rot.c());
    const double eta = (rot.d() == cplx(0.0)) ? 0.0 : std::arg(rot.d());
    const double theta = std::atan2(std::abs(rot.d()), std::abs(rot.c()));
    return EulerAngles{wrap_to_pi(half_pi + xi + eta), wrap_to_pi(2.0 * theta),
                       wrap_to_pi(half_pi + xi - eta)};
}

Mat2c reconstruct(const EulerAngles& angles) {
    const Mat2c h = hadamard();
    return cplx(0.0, 1.0) * (rz(angles.q) * h * rz(angles.r) * h * rz(angles.s));
}

DecompositionCheck verify_decomposition(const BasisRotation& rot) {
    const Mat2c target = rotation_matrix(rot);
    const Mat2c rebuilt = reconstruct(euler_angles(rot));

    cplx inner = 0.0;  // <rebuilt, target> Frobenius
    for (std::size_t i = 0; i < 4; ++i) inner += std::conj(rebuilt.e[i]) * target.e[i];
    const cplx phase = (std::abs(inner) > 1e-300) ? inner / std::abs(inner) : cplx(1.0);

    return DecompositionCheck{max_abs_diff(rebuilt, target),
                              max_abs_diff(phase * rebuilt, target)};
}

}  // namespace catqkd
