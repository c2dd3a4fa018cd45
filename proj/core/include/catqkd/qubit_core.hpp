#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>

namespace catqkd {

using cplx = std::complex<double>;

/// Dense square complex matrix of fixed (small) dimension, row-major.
template <std::size_t N>
struct SquareMatrix {
    std::array<cplx, N * N> e{};

    static constexpr std::size_t dim = N;

    cplx& operator()(std::size_t r, std::size_t c) { return e[r * N + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return e[r * N + c]; }

    static SquareMatrix identity() {
        SquareMatrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    SquareMatrix adjoint() const {
        SquareMatrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
        SquareMatrix m;
        for (std::size_t i = 0; i < N * N; ++i) m.e[i] = a.e[i] + b.e[i];
        return m;
    }
    friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
        SquareMatrix m;
        for (std::size_t i = 0; i < N * N; ++i) m.e[i] = a.e[i] - b.e[i];
        return m;
    }
    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
        SquareMatrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) {
                cplx s = 0.0;
                for (std::size_t k = 0; k < N; ++k) s += a(r, k) * b(k, c);
                m(r, c) = s;
            }
        return m;
    }
    friend SquareMatrix operator*(cplx s, const SquareMatrix& a) {
        SquareMatrix m;
        for (std::size_t i = 0; i < N * N; ++i) m.e[i] = s * a.e[i];
        return m;
    }
    friend SquareMatrix operator*(const SquareMatrix& a, cplx s) { return s * a; }
};

using Mat2c = SquareMatrix<2>;
using Mat4c = SquareMatrix<4>;

using Vec2c = std::array<cplx, 2>;
using Vec4c = std::array<cplx, 4>;

Vec2c operator*(const Mat2c& m, const Vec2c& v);
Vec4c operator*(const Mat4c& m, const Vec4c& v);

/// |u><v| in the 4-dimensional two-qubit space.
Mat4c outer(const Vec4c& u, const Vec4c& v);

/// Largest |a_ij - b_ij| over all entries.
template <std::size_t N>
double max_abs_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < N * N; ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
    return m;
}

template <std::size_t N>
double max_abs(const SquareMatrix<N>& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < N * N; ++i) m = std::max(m, std::abs(a.e[i]));
    return m;
}

enum class PauliAxis { X, Y, Z };

/// Pauli matrix in the ordered basis {|+>, |->} (|+> first, sigma_z|+> = +|+>).
Mat2c pauli(PauliAxis axis);

/// Kronecker product consistent with the basis order {|++>, |+->, |-+>, |-->}.
Mat4c tensor(const Mat2c& a, const Mat2c& b);

/// Unit vector on the Bloch sphere labelling a dichotomic +-1 observable.
///
/// The checked constructor rejects inputs whose Euclidean norm deviates from 1
/// by more than 1e-9 and renormalizes the rest, so stored components always
/// satisfy the unit-norm invariant to machine precision.
class MeasurementVector {
  public:
    MeasurementVector(double x, double y, double z);

    /// Builds from an arbitrary nonzero direction (normalizes; throws on ~zero).
    static MeasurementVector normalized(double x, double y, double z);

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }

  private:
    double x_, y_, z_;
};

/// A = a_x sigma_x + a_y sigma_y + a_z sigma_z; Hermitian with eigenvalues +-1.
Mat2c observable_from_vector(const MeasurementVector& v);

class DensityMatrix4;

struct EigenSystem4 {
    std::array<double, 4> values;  // descending
    Mat4c vectors;                 // column i is the eigenvector of values[i]
};

/// Eigendecomposition of a Hermitian 4x4 matrix (cyclic complex Jacobi).
/// Throws std::invalid_argument if the input deviates from Hermitian by more
/// than 1e-10 in any entry.
EigenSystem4 eig_hermitian4(const Mat4c& m);

/// Eigenvalues of a Hermitian 2x2 matrix, closed form, descending.
std::array<double, 2> eig_hermitian2(const Mat2c& m);

/// Two-qubit density matrix in the ordered basis {|++>, |+->, |-+>, |-->}.
/// Construction validates Hermiticity and unit trace to 1e-12 and positive
/// semidefiniteness to eigenvalue >= -1e-12.
class DensityMatrix4 {
  public:
    explicit DensityMatrix4(const Mat4c& m);

    const Mat4c& mat() const { return m_; }

  private:
    Mat4c m_;
};

/// Real 3x3 correlation matrix C_ij = Tr[(sigma_i x sigma_j) rho], i,j in {x,y,z}.
/// Entries are expectations of products of +-1 observables, so they live in [-1, 1].
class CorrelationMatrix {
  public:
    explicit CorrelationMatrix(const std::array<double, 9>& entries);

    double operator()(std::size_t i, std::size_t j) const { return e_[i * 3 + j]; }

    std::array<double, 3> row(std::size_t i) const {
        return {e_[i * 3], e_[i * 3 + 1], e_[i * 3 + 2]};
    }

  private:
    std::array<double, 9> e_;
};

/// C_ij = Tr[(sigma_i x sigma_j) rho]. Throws std::runtime_error if any entry
/// has imaginary part above 1e-10 (numerical-consistency guard); otherwise the
/// imaginary parts are discarded.
CorrelationMatrix correlation_matrix(const DensityMatrix4& rho);

/// <A x B> for the observables labelled by unit vectors a and b. Equals
/// a . C(rho) . b; computed via the operator trace.
double expectation_joint(const DensityMatrix4& rho, const MeasurementVector& a,
                         const MeasurementVector& b);

/// Joint outcome distribution of the +-1 observables A and B under rho,
/// from the projector form P(s,t) = Tr[((I+sA)/2 x (I+tB)/2) rho].
struct JointProbs {
    double pp, pm, mp, mm;  // P(+,+), P(+,-), P(-,+), P(-,-)

    double expectation() const { return pp - pm - mp + mm; }
    double disagree() const { return pm + mp; }
};

JointProbs joint_outcome_probs(const DensityMatrix4& rho, const MeasurementVector& a,
                               const MeasurementVector& b);

/// Full SVD of a correlation matrix: C r_i = s_i l_i with s_1 >= s_2 >= s_3 >= 0
/// and orthonormal left/right triples.
///
/// Conventions (all deterministic):
///  - ties in the singular values (within 1e-12) keep the stable axis order
///    x, y, z of the input columns;
///  - signs are fixed so that l_i . C . r_i = s_i >= 0 and the first component
///    of l_i with magnitude > 1e-12 is positive.
struct SingularTriple {
    std::array<double, 3> s;
    std::array<MeasurementVector, 3> left;
    std::array<MeasurementVector, 3> right;
};

SingularTriple svd3(const CorrelationMatrix& c);

}  // namespace catqkd
