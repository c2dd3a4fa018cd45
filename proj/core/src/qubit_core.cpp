#include "catqkd/qubit_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace catqkd {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-12;
constexpr double kImagTol = 1e-10;

template <std::size_t N>
double hermiticity_defect(const SquareMatrix<N>& m) {
    double worst = 0.0;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
            worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
    return worst;
}

template <std::size_t N>
double frobenius(const SquareMatrix<N>& m) {
    double s = 0.0;
    for (const auto& v : m.e) s += std::norm(v);
    return std::sqrt(s);
}

double checked_real(cplx value, const char* what) {
    if (std::abs(value.imag()) > kImagTol)
        throw std::runtime_error(std::string(what) + ": imaginary part exceeds 1e-10");
    return value.real();
}

}  // namespace

Vec2c operator*(const Mat2c& m, const Vec2c& v) {
    return {m(0, 0) * v[0] + m(0, 1) * v[1], m(1, 0) * v[0] + m(1, 1) * v[1]};
}

Vec4c operator*(const Mat4c& m, const Vec4c& v) {
    Vec4c out{};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) out[r] += m(r, c) * v[c];
    return out;
}

Mat4c outer(const Vec4c& u, const Vec4c& v) {
    Mat4c m;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m(r, c) = u[r] * std::conj(v[c]);
    return m;
}

Mat2c pauli(PauliAxis axis) {
    Mat2c m;
    switch (axis) {
        case PauliAxis::X:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case PauliAxis::Y:
            m(0, 1) = cplx(0.0, -1.0);
            m(1, 0) = cplx(0.0, 1.0);
            break;
        case PauliAxis::Z:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
    }
    return m;
}

Mat4c tensor(const Mat2c& a, const Mat2c& b) {
    Mat4c m;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

MeasurementVector::MeasurementVector(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (std::abs(n - 1.0) > 1e-9)
        throw std::invalid_argument("MeasurementVector: vector is not unit norm");
    x_ = x / n;
    y_ = y / n;
    z_ = z / n;
}

MeasurementVector MeasurementVector::normalized(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (n < 1e-12)
        throw std::invalid_argument("MeasurementVector: cannot normalize a ~zero vector");
    return MeasurementVector(x / n, y / n, z / n);
}

Mat2c observable_from_vector(const MeasurementVector& v) {
    Mat2c m;
    m(0, 0) = v.z();
    m(0, 1) = cplx(v.x(), -v.y());
    m(1, 0) = cplx(v.x(), v.y());
    m(1, 1) = -v.z();
    return m;
}

std::array<double, 2> eig_hermitian2(const Mat2c& m) {
    if (hermiticity_defect(m) > 1e-10)
        throw std::invalid_argument("eig_hermitian2: matrix is not Hermitian");
    const double a = m(0, 0).real();
    const double b = m(1, 1).real();
    const double mid = 0.5 * (a + b);
    const double rad = std::hypot(0.5 * (a - b), std::abs(m(0, 1)));
    return {mid + rad, mid - rad};
}

EigenSystem4 eig_hermitian4(const Mat4c& m) {
    if (hermiticity_defect(m) > 1e-10)
        throw std::invalid_argument("eig_hermitian4: matrix is not Hermitian");

    // Work on the symmetrized copy; cyclic complex Jacobi rotations.
    Mat4c a;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    Mat4c v = Mat4c::identity();

    const double scale = frobenius(a) + 1e-300;
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < 4; ++p)
            for (std::size_t q = p + 1; q < 4; ++q) off += 2.0 * std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-15 * scale) break;

        for (std::size_t p = 0; p < 4; ++p) {
            for (std::size_t q = p + 1; q < 4; ++q) {
                const cplx g = a(p, q);
                const double absg = std::abs(g);
                if (absg < 1e-300) continue;
                const cplx w = g / absg;  // phase of the pivot
                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();
                const double tau = (beta - alpha) / (2.0 * absg);
                // Small-magnitude root of t^2 - 2*tau*t - 1 = 0.
                const double t =
                    (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                 : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // A <- U^dag A U,  V <- V U with the (p,q)-plane unitary
                // U = [[c, -s w], [s conj(w), c]].
                for (std::size_t i = 0; i < 4; ++i) {  // columns of A and V
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip + s * std::conj(w) * aiq;
                    a(i, q) = -s * w * aip + c * aiq;
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip + s * std::conj(w) * viq;
                    v(i, q) = -s * w * vip + c * viq;
                }
                for (std::size_t j = 0; j < 4; ++j) {  // rows of A
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj + s * w * aqj;
                    a(q, j) = -s * std::conj(w) * apj + c * aqj;
                }
            }
        }
    }

    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem4 out;
    for (std::size_t k = 0; k < 4; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < 4; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

DensityMatrix4::DensityMatrix4(const Mat4c& m) : m_(m) {
    if (hermiticity_defect(m) > kHermTol)
        throw std::invalid_argument("DensityMatrix4: not Hermitian to 1e-12");
    if (std::abs(m.trace() - cplx(1.0)) > kTraceTol)
        throw std::invalid_argument("DensityMatrix4: trace differs from 1 by more than 1e-12");
    const auto eig = eig_hermitian4(m);
    if (eig.values.back() < -kPsdTol)
        throw std::invalid_argument("DensityMatrix4: negative eigenvalue beyond -1e-12");
}

CorrelationMatrix::CorrelationMatrix(const std::array<double, 9>& entries) : e_(entries) {
    for (double& x : e_) {
        if (!std::isfinite(x)) throw std::invalid_argument("CorrelationMatrix: non-finite entry");
        if (std::abs(x) > 1.0 + 1e-9)
            throw std::invalid_argument("CorrelationMatrix: entry outside [-1, 1]");
        x = std::clamp(x, -1.0, 1.0);
    }
}

CorrelationMatrix correlation_matrix(const DensityMatrix4& rho) {
    const std::array<PauliAxis, 3> axes{PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
    std::array<double, 9> c{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const cplx t = (tensor(pauli(axes[i]), pauli(axes[j])) * rho.mat()).trace();
            c[i * 3 + j] = checked_real(t, "correlation_matrix");
        }
    return CorrelationMatrix(c);
}

double expectation_joint(const DensityMatrix4& rho, const MeasurementVector& a,
                         const MeasurementVector& b) {
    const Mat4c ab = tensor(observable_from_vector(a), observable_from_vector(b));
    const double e = checked_real((ab * rho.mat()).trace(), "expectation_joint");
    return std::clamp(e, -1.0, 1.0);
}

JointProbs joint_outcome_probs(const DensityMatrix4& rho, const MeasurementVector& a,
                               const MeasurementVector& b) {
    const Mat2c oa = observable_from_vector(a);
    const Mat2c ob = observable_from_vector(b);
    const Mat2c id = Mat2c::identity();

    auto projector = [&](const Mat2c& obs, double sign) {
        return cplx(0.5) * (id + cplx(sign) * obs);
    };

    auto prob = [&](double sa, double sb) {
        const Mat4c pr = tensor(projector(oa, sa), projector(ob, sb));
        const double p = checked_real((pr * rho.mat()).trace(), "joint_outcome_probs");
        if (p < -1e-12) throw std::runtime_error("joint_outcome_probs: negative probability");
        return std::clamp(p, 0.0, 1.0);
    };

    JointProbs jp{prob(1, 1), prob(1, -1), prob(-1, 1), prob(-1, -1)};
    if (std::abs(jp.pp + jp.pm + jp.mp + jp.mm - 1.0) > 1e-12)
        throw std::runtime_error("joint_outcome_probs: probabilities do not sum to 1");
    return jp;
}

SingularTriple svd3(const CorrelationMatrix& c) {
    // One-sided (Hestenes) Jacobi: orthogonalize the columns of A = C by plane
    // rotations accumulated into V; then A = U diag(s) V^T with s_j the final
    // column norms.
    double a[3][3], v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = c(i, j);

    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < 3; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                double app = 0, aqq = 0, apq = 0;
                for (int i = 0; i < 3; ++i) {
                    app += a[i][p] * a[i][p];
                    aqq += a[i][q] * a[i][q];
                    apq += a[i][p] * a[i][q];
                }
                if (std::abs(apq) <= 1e-15 * std::sqrt(app * aqq) || apq == 0.0) continue;
                rotated = true;
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0)
                                     ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                     : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (int i = 0; i < 3; ++i) {
                    const double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = cs * aip - sn * aiq;
                    a[i][q] = sn * aip + cs * aiq;
                    const double vip = v[i][p], viq = v[i][q];
                    v[i][p] = cs * vip - sn * viq;
                    v[i][q] = sn * vip + cs * viq;
                }
            }
        }
        if (!rotated) break;
    }

    double sig[3];
    double u[3][3];
    for (int j = 0; j < 3; ++j) {
        sig[j] = std::sqrt(a[0][j] * a[0][j] + a[1][j] * a[1][j] + a[2][j] * a[2][j]);
        for (int i = 0; i < 3; ++i) u[i][j] = a[i][j];
    }

    // Descending order; near-ties (1e-12) keep the stable input-axis order so
    // that degenerate pairs come out as x, then y, then z. Insertion sort with
    // a beyond-tolerance comparison keeps this deterministic.
    std::array<int, 3> order{0, 1, 2};
    for (int i = 1; i < 3; ++i)
        for (int j = i; j > 0 && sig[order[j]] > sig[order[j - 1]] + 1e-12; --j)
            std::swap(order[j], order[j - 1]);

    const double rank_tol = 1e-13 * std::max(1.0, sig[order[0]]);
    std::array<std::array<double, 3>, 3> left{}, right{};
    std::array<double, 3> s{};
    int good = 0;
    for (int k = 0; k < 3; ++k) {
        const int j = order[k];
        s[k] = sig[j];
        for (int i = 0; i < 3; ++i) right[k][i] = v[i][j];
        if (sig[j] > rank_tol) {
            for (int i = 0; i < 3; ++i) left[k][i] = u[i][j] / sig[j];
            ++good;
        }
    }

    auto cross = [](const std::array<double, 3>& x, const std::array<double, 3>& y) {
        return std::array<double, 3>{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2],
                                     x[0] * y[1] - x[1] * y[0]};
    };

    // Complete rank-deficient left triples to an orthonormal basis.
    if (good == 2) {
        left[2] = cross(left[0], left[1]);
    } else if (good == 1) {
        int k = 0;  // axis least aligned with left[0]
        for (int i = 1; i < 3; ++i)
            if (std::abs(left[0][i]) < std::abs(left[0][k])) k = i;
        std::array<double, 3> e{};
        e[k] = 1.0;
        const double d = e[0] * left[0][0] + e[1] * left[0][1] + e[2] * left[0][2];
        for (int i = 0; i < 3; ++i) e[i] -= d * left[0][i];
        const double n = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
        for (int i = 0; i < 3; ++i) left[1][i] = e[i] / n;
        left[2] = cross(left[0], left[1]);
    } else if (good == 0) {
        for (int i = 0; i < 3; ++i) left[i][i] = 1.0;
    }

    // Sign convention: first component of l_i with magnitude > 1e-12 positive;
    // flipping both l_i and r_i preserves C r_i = s_i l_i.
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 3; ++i) {
            if (std::abs(left[k][i]) > 1e-12) {
                if (left[k][i] < 0.0)
                    for (int j = 0; j < 3; ++j) {
                        left[k][j] = -left[k][j];
                        right[k][j] = -right[k][j];
                    }
                break;
            }
        }
    }

    auto mv = [](const std::array<double, 3>& w) {
        return MeasurementVector::normalized(w[0], w[1], w[2]);
    };
    return SingularTriple{s,
                          {mv(left[0]), mv(left[1]), mv(left[2])},
                          {mv(right[0]), mv(right[1]), mv(right[2])}};
}

}  // namespace catqkd
