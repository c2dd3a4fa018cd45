#pragma once

#include "catqkd/qubit_core.hpp"

namespace catqkd {

/// Target measurement basis |phi> = c|+> + d|->, normalized to 1e-12.
class BasisRotation {
  public:
    BasisRotation(cplx c, cplx d);

    cplx c() const { return c_; }
    cplx d() const { return d_; }

  private:
    cplx c_, d_;
};

/// U = [[c*, d*], [d, -c]]; maps c|+> + d|-> onto |+> (determinant -1).
Mat2c rotation_matrix(const BasisRotation& rot);

/// Phase rotation gate: rz(angle) = diag(e^{-i angle/2}, e^{+i angle/2}).
Mat2c rz(double angle);

Mat2c hadamard();

/// Euler angles of the U = i Rz(q) H Rz(r) H Rz(s) decomposition:
/// q = pi/2 + xi + eta, r = 2 theta, s = pi/2 + xi - eta with xi = arg c,
/// eta = arg d, tan(theta) = |d/c|; each angle reduced to (-pi, pi].
/// arg of an exactly zero component is taken as 0.
struct EulerAngles {
    double q, r, s;
};

EulerAngles euler_angles(const BasisRotation& rot);

/// i Rz(q) H Rz(r) H Rz(s).
Mat2c reconstruct(const EulerAngles& angles);

/// Max-abs deviation between the reconstructed gate and rotation_matrix(rot),
/// both raw and after aligning the global phase (Frobenius-optimal phase).
struct DecompositionCheck {
    double raw_deviation;
    double aligned_deviation;
};

DecompositionCheck verify_decomposition(const BasisRotation& rot);

}  // namespace catqkd
