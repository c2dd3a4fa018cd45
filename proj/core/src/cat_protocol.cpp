#include "catqkd/cat_protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace catqkd {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_source(double alpha, double phi) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("source: alpha must be finite and >= 0");
    if (!(phi > 0.0) || !(phi <= kHalfPi))
        throw std::invalid_argument("source: phi must lie in (0, pi/2]");
}

}  // namespace

double gamma_from_source(double alpha, double phi) {
    check_source(alpha, phi);
    const double s = std::sin(phi);
    return std::exp(-2.0 * alpha * alpha * s * s);
}

double delta_t(double alpha, double phi, double transmission) {
    check_source(alpha, phi);
    if (!(transmission > 0.0) || !(transmission <= 1.0))
        throw std::invalid_argument("delta_t: transmission must lie in (0, 1]");
    if (alpha == 0.0) return 0.0;  // arg of a unit overlap
    return -transmission * alpha * alpha * std::sin(2.0 * phi);
}

double transmission_from_distance(double distance_km, double loss_db_per_km) {
    if (!(distance_km >= 0.0) || !std::isfinite(distance_km))
        throw std::invalid_argument("transmission_from_distance: distance must be >= 0");
    if (!(loss_db_per_km > 0.0) || !std::isfinite(loss_db_per_km))
        throw std::invalid_argument("transmission_from_distance: loss must be > 0");
    return std::pow(10.0, -loss_db_per_km * distance_km / 10.0);
}

SourceParams::SourceParams(double alpha, double phi) : alpha_(alpha), phi_(phi) {
    check_source(alpha, phi);
}

cplx SourceParams::displaced_cat_amplitude() const {
    return cplx(0.0, alpha_ * std::sin(phi_));
}

ChannelPoint::ChannelPoint(double gamma, double transmission)
    : gamma_(gamma), t_(transmission) {
    if (!std::isfinite(gamma) || gamma < 0.0)
        throw std::invalid_argument("ChannelPoint: gamma must lie in [0, 1)");
    if (gamma >= 1.0)
        throw std::domain_error("ChannelPoint: degenerate overlap (gamma = 1)");
    if (!(transmission > 0.0) || !(transmission <= 1.0))
        throw std::invalid_argument("ChannelPoint: transmission must lie in (0, 1]");
}

ChannelPoint ChannelPoint::from_distance(double gamma, double distance_km,
                                         double loss_db_per_km) {
    ChannelPoint pt(gamma, transmission_from_distance(distance_km, loss_db_per_km));
    pt.prov_ = ChannelProvenance{distance_km, loss_db_per_km};
    return pt;
}

double ChannelPoint::gamma_t() const { return std::pow(gamma_, t_); }

double ChannelPoint::gamma_r() const { return std::pow(gamma_, 1.0 - t_); }

CoefficientsABD coefficients(const ChannelPoint& pt) {
    const double gt = pt.gamma_t();
    const double gr = pt.gamma_r();
    const double np2 = 2.0 * (1.0 + gt);  // N_+^2
    const double nm2 = 2.0 * (1.0 - gt);  // N_-^2
    const double mp2 = 2.0 * (1.0 + gr * gr);
    const double mm2 = 2.0 * (1.0 - gr * gr);
    const double n2 = 2.0 * (1.0 - pt.gamma() * pt.gamma());
    return CoefficientsABD{mm2 * np2 * np2 / (16.0 * n2),
                           mp2 * np2 * nm2 / (16.0 * n2),
                           mm2 * nm2 * nm2 / (16.0 * n2)};
}

DensityMatrix4 rho_unfiltered(const ChannelPoint& pt) {
    const auto [a, b, d] = coefficients(pt);
    const double off = -std::sqrt(a * d);
    Mat4c m;
    m(0, 0) = a;
    m(0, 3) = off;
    m(3, 0) = off;
    m(3, 3) = d;
    m(1, 1) = b;
    m(1, 2) = -b;
    m(2, 1) = -b;
    m(2, 2) = b;
    return DensityMatrix4(m);
}

RhoEigenDecomposition rho_eigendecomposition(const ChannelPoint& pt) {
    const double gt = pt.gamma_t();
    const double gr = pt.gamma_r();
    const double np2 = 2.0 * (1.0 + gt);
    const double nm2 = 2.0 * (1.0 - gt);
    const double mp2 = 2.0 * (1.0 + gr * gr);
    const double mm2 = 2.0 * (1.0 - gr * gr);
    const double n2 = 2.0 * (1.0 - pt.gamma() * pt.gamma());

    RhoEigenDecomposition out;
    out.weight_psi = mm2 * (np2 * np2 + nm2 * nm2) / (16.0 * n2);
    out.weight_phi = mp2 * (2.0 * np2 * nm2) / (16.0 * n2);

    const double psi_norm = std::sqrt(np2 * np2 + nm2 * nm2);
    out.psi = Vec4c{np2 / psi_norm, 0.0, 0.0, -nm2 / psi_norm};
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    out.phi = Vec4c{0.0, inv_sqrt2, -inv_sqrt2, 0.0};
    return out;
}

}  // namespace catqkd
