#pragma once

#include <vector>

#include "catqkd/qubit_core.hpp"

namespace catqkd {

/// State in the truncated photon-number basis {|0>, ..., |n_max>}.
class FockVector {
  public:
    explicit FockVector(std::vector<cplx> amplitudes);

    int n_max() const { return static_cast<int>(amps_.size()) - 1; }
    const std::vector<cplx>& amplitudes() const { return amps_; }

    /// |1 - sum |a_n|^2|.
    double norm_defect() const;

    friend FockVector operator*(cplx s, const FockVector& v);
    friend FockVector operator+(const FockVector& u, const FockVector& v);

  private:
    std::vector<cplx> amps_;
};

/// Coherent state a_n = e^{-|b|^2/2} b^n / sqrt(n!) via the stable recursion
/// a_n = a_{n-1} b / sqrt(n). Admission rule |b|^2 <= n_max/4 keeps the
/// truncated tail mass (hence the norm defect) below 1e-13.
FockVector coherent_fock(cplx amplitude, int n_max);

/// <u|v> = sum conj(u_n) v_n. Truncation levels must match.
cplx overlap(const FockVector& u, const FockVector& v);

/// Beam-splitter action on a coherent amplitude with real t = sqrt(T),
/// r = sqrt(1-T): |b> -> |t b>|r b>.
struct SplitAmplitudes {
    cplx transmitted;
    cplx reflected;
};

SplitAmplitudes split_amplitudes(cplx amplitude, double transmission);

/// First-principles reduced two-qubit state in the orthonormal {|+>, |->}
/// basis: coherent states built in the truncated number basis, exact
/// beam-splitter split, loss modes traced out via their Gram matrix, Alice's
/// and Bob's components projected onto the orthonormal basis. Every overlap
/// is computed by Fock summation (never from closed-form exponentials).
Mat4c reduced_state(double alpha, double phi, double transmission, int n_max);

struct ReducedStateComparison {
    Mat4c oracle;
    Mat4c model;
    double max_deviation;
};

/// reduced_state versus the coefficient-form model rho_unfiltered at
/// gamma = gamma_from_source(alpha, phi).
ReducedStateComparison compare_to_qubit_model(double alpha, double phi,
                                              double transmission, int n_max);

}  // namespace catqkd
