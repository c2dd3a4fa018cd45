#include "catqkd/fock_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "catqkd/cat_protocol.hpp"

namespace catqkd {

FockVector::FockVector(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) throw std::invalid_argument("FockVector: empty amplitude list");
}

double FockVector::norm_defect() const {
    double n = 0.0;
    for (const auto& a : amps_) n += std::norm(a);
    return std::abs(1.0 - n);
}

FockVector operator*(cplx s, const FockVector& v) {
    std::vector<cplx> out = v.amps_;
    for (auto& a : out) a *= s;
    return FockVector(std::move(out));
}

FockVector operator+(const FockVector& u, const FockVector& v) {
    if (u.n_max() != v.n_max())
        throw std::invalid_argument("FockVector: mismatched truncation levels");
    std::vector<cplx> out = u.amps_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v.amps_[i];
    return FockVector(std::move(out));
}

FockVector coherent_fock(cplx amplitude, int n_max) {
    if (n_max < 0) throw std::invalid_argument("coherent_fock: n_max must be >= 0");
    const double mean_n = std::norm(amplitude);
    if (mean_n > n_max / 4.0)
        throw std::invalid_argument(
            "coherent_fock: truncation admission violated (|amplitude|^2 > n_max/4)");
    std::vector<cplx> a(static_cast<std::size_t>(n_max) + 1);
    a[0] = std::exp(-0.5 * mean_n);
    for (int n = 1; n <= n_max; ++n)
        a[n] = a[n - 1] * amplitude / std::sqrt(static_cast<double>(n));
    return FockVector(std::move(a));
}

cplx overlap(const FockVector& u, const FockVector& v) {
    if (u.n_max() != v.n_max())
        throw std::invalid_argument("overlap: mismatched truncation levels");
    cplx s = 0.0;
    for (int n = 0; n <= u.n_max(); ++n)
        s += std::conj(u.amplitudes()[n]) * v.amplitudes()[n];
    return s;
}

SplitAmplitudes split_amplitudes(cplx amplitude, double transmission) {
    if (!(transmission > 0.0) || !(transmission <= 1.0))
        throw std::invalid_argument("split_amplitudes: transmission must lie in (0, 1]");
    return SplitAmplitudes{std::sqrt(transmission) * amplitude,
                           std::sqrt(1.0 - transmission) * amplitude};
}

Mat4c reduced_state(double alpha, double phi, double transmission, int n_max) {
    (void)SourceParams(alpha, phi);  // range checks
    const cplx a_plus = alpha * std::polar(1.0, phi);
    const cplx a_minus = alpha * std::polar(1.0, -phi);
    const auto [t_plus, r_plus] = split_amplitudes(a_plus, transmission);
    const auto [t_minus, r_minus] = split_amplitudes(a_minus, transmission);

    const FockVector f_plus = coherent_fock(a_plus, n_max);
    const FockVector f_minus = coherent_fock(a_minus, n_max);
    const FockVector ft_plus = coherent_fock(t_plus, n_max);
    const FockVector ft_minus = coherent_fock(t_minus, n_max);
    const FockVector fr_plus = coherent_fock(r_plus, n_max);
    const FockVector fr_minus = coherent_fock(r_minus, n_max);

    // All scalars by Fock summation.
    const cplx ov_full = overlap(f_plus, f_minus);
    const cplx ov_t = overlap(ft_plus, ft_minus);
    const cplx ov_r = overlap(fr_plus, fr_minus);
    const double n2 = 2.0 * (1.0 - std::norm(ov_full));
    const double gamma_t = std::abs(ov_t);
    const double dt = (std::abs(ov_t) == 0.0) ? 0.0 : std::arg(ov_t);

    const double np = std::sqrt(2.0 * (1.0 + gamma_t));
    const double nm = std::sqrt(2.0 * (1.0 - gamma_t));
    const cplx ph = std::polar(1.0, 0.5 * dt);

    // |t a_+-> = e^{-+ i dt/2} (N+ |+> +- N- |->)/2 in the orthonormal basis.
    const Vec2c v_tp{std::conj(ph) * cplx(0.5 * np), std::conj(ph) * cplx(0.5 * nm)};
    const Vec2c v_tm{ph * cplx(0.5 * np), ph * cplx(-0.5 * nm)};

    auto product = [](const Vec2c& a, const Vec2c& b) {
        return Vec4c{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
    };
    const Vec4c w1 = product(v_tp, v_tm);  // term 1: Alice t a_+, Bob t a_-
    const Vec4c w2 = product(v_tm, v_tp);  // term 2: swapped

    // Loss-mode Gram entries, also by summation (truncated norms included).
    const double l11 = overlap(fr_plus, fr_plus).real() * overlap(fr_minus, fr_minus).real();
    const double l12 = std::norm(ov_r);  // <L1|L2> = <r a_+|r a_-><r a_-|r a_+>

    const Mat4c rho = cplx(l11 / n2) * (outer(w1, w1) + outer(w2, w2)) -
                      cplx(l12 / n2) * (outer(w1, w2) + outer(w2, w1));
    return rho;
}

ReducedStateComparison compare_to_qubit_model(double alpha, double phi,
                                              double transmission, int n_max) {
    const Mat4c oracle = reduced_state(alpha, phi, transmission, n_max);
    const ChannelPoint pt(gamma_from_source(alpha, phi), transmission);
    const Mat4c model = rho_unfiltered(pt).mat();
    return ReducedStateComparison{oracle, model, max_abs_diff(oracle, model)};
}

}  // namespace catqkd
