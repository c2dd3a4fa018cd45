#include "catqkd/filtering.hpp"

#include <cmath>
#include <stdexcept>

namespace catqkd {

namespace {

constexpr double kAnnihilationTol = 1e-15;

FilteredState make_closed_form(double sqrt_ad, double b, double p) {
    const double norm = 2.0 * (b + sqrt_ad);
    const double x = sqrt_ad / norm;
    const double y = b / norm;
    Mat4c m;
    m(0, 0) = x;
    m(0, 3) = -x;
    m(3, 0) = -x;
    m(3, 3) = x;
    m(1, 1) = y;
    m(1, 2) = -y;
    m(2, 1) = -y;
    m(2, 2) = y;
    return FilteredState{DensityMatrix4(m), p};
}

}  // namespace

FilterValidity validate_filter(const Mat2c& m) {
    const Mat2c residual = Mat2c::identity() - m.adjoint() * m;
    const auto eig = eig_hermitian2(residual);
    const double margin = eig[1];
    return FilterValidity{margin >= -1e-12, margin};
}

LocalFilter::LocalFilter(const Mat2c& m) : m_(m) {
    const auto v = validate_filter(m);
    if (!v.valid)
        throw std::invalid_argument("LocalFilter: I - M^dag M is not positive semidefinite");
    margin_ = v.margin;
}

std::pair<LocalFilter, LocalFilter> optimal_filters(const CoefficientsABD& coeffs) {
    if (!(coeffs.a > 0.0))
        throw std::domain_error("optimal_filters: a = 0 (lossless limit); "
                                "use the ChannelPoint overload");
    Mat2c m;
    m(0, 0) = std::pow(coeffs.d / coeffs.a, 0.25);
    m(1, 1) = 1.0;
    LocalFilter f(m);
    return {f, f};
}

std::pair<LocalFilter, LocalFilter> optimal_filters(const ChannelPoint& pt) {
    const double gt = pt.gamma_t();
    Mat2c m;
    m(0, 0) = std::sqrt((1.0 - gt) / (1.0 + gt));
    m(1, 1) = 1.0;
    LocalFilter f(m);
    return {f, f};
}

FilteredState apply_filters(const DensityMatrix4& rho, const LocalFilter& ma,
                            const LocalFilter& mb) {
    const Mat4c k = tensor(ma.mat(), mb.mat());
    const Mat4c sigma = k * rho.mat() * k.adjoint();
    const cplx tr = sigma.trace();
    if (std::abs(tr.imag()) > 1e-12)
        throw std::runtime_error("apply_filters: trace has spurious imaginary part");
    const double p = tr.real();
    if (p <= kAnnihilationTol)
        throw std::domain_error("apply_filters: filter annihilates state");
    return FilteredState{DensityMatrix4(cplx(1.0 / p) * sigma), p};
}

FilteredState filtered_state_closed_form(const CoefficientsABD& coeffs) {
    if (!(coeffs.a > 0.0))
        throw std::domain_error("filtered_state_closed_form: a = 0");
    if (!(coeffs.d > 0.0))
        throw std::domain_error("filtered_state_closed_form: d = 0 (lossless limit); "
                                "use the ChannelPoint overload");
    const double sqrt_ad = std::sqrt(coeffs.a * coeffs.d);
    const double p = 2.0 * std::sqrt(coeffs.d / coeffs.a) * (coeffs.b + sqrt_ad);
    return make_closed_form(sqrt_ad, coeffs.b, p);
}

FilteredState filtered_state_closed_form(const ChannelPoint& pt) {
    const double gr2 = pt.gamma_r() * pt.gamma_r();
    // Normalized entries: (b - sqrt(ad))/(b + sqrt(ad)) = gamma^{2(1-T)}, so the
    // corner and center become (1 -+ gamma^{2(1-T)})/4 after renormalization.
    return make_closed_form(0.25 * (1.0 - gr2), 0.25 * (1.0 + gr2),
                            success_prob_closed_form(pt));
}

double success_prob_closed_form(const ChannelPoint& pt) {
    const double g = pt.gamma();
    const double gt = pt.gamma_t();
    return (1.0 - gt) * (1.0 - gt) / (1.0 - g * g);
}

FilteredState filter_pipeline(const ChannelPoint& pt) {
    const auto [ma, mb] = optimal_filters(pt);
    return apply_filters(rho_unfiltered(pt), ma, mb);
}

double bell_basis_offdiag_max(const DensityMatrix4& rho) {
    const double r = 1.0 / std::sqrt(2.0);
    Mat4c b;  // columns: |Phi+>, |Phi->, |Psi+>, |Psi->
    b(0, 0) = r;
    b(3, 0) = r;
    b(0, 1) = r;
    b(3, 1) = -r;
    b(1, 2) = r;
    b(2, 2) = r;
    b(1, 3) = r;
    b(2, 3) = -r;
    const Mat4c in_bell = b.adjoint() * rho.mat() * b;
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) worst = std::max(worst, std::abs(in_bell(i, j)));
    return worst;
}

}  // namespace catqkd
