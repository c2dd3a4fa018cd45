#pragma once

#include <optional>

#include "catqkd/qubit_core.hpp"

namespace catqkd {

/// Overlap of the two coherent components |alpha e^{+i phi}> and
/// |alpha e^{-i phi}>: gamma = exp(-2 alpha^2 sin^2 phi).
/// alpha = 0 returns the degenerate gamma = 1 (rejected by ChannelPoint).
double gamma_from_source(double alpha, double phi);

/// Phase of the attenuated overlap <t alpha_+ | t alpha_->:
/// delta_t = -T alpha^2 sin(2 phi), zero when the overlap amplitude vanishes.
double delta_t(double alpha, double phi, double transmission);

/// T = 10^(-loss_db_per_km * distance_km / 10).
double transmission_from_distance(double distance_km, double loss_db_per_km);

/// Source parametrization (alpha, phi). Convenience layer: the qubit-level
/// pipeline works in (gamma, T) only.
class SourceParams {
  public:
    SourceParams(double alpha, double phi);

    double alpha() const { return alpha_; }
    double phi() const { return phi_; }
    double gamma() const { return gamma_from_source(alpha_, phi_); }
    /// beta = i alpha sin(phi), the displaced-cat amplitude (reporting only).
    cplx displaced_cat_amplitude() const;

  private:
    double alpha_, phi_;
};

struct ChannelProvenance {
    double distance_km;
    double loss_db_per_km;
};

/// One channel working point: overlap gamma in [0, 1) and total transmission
/// probability T in (0, 1], optionally carrying its distance/loss provenance.
class ChannelPoint {
  public:
    ChannelPoint(double gamma, double transmission);
    static ChannelPoint from_distance(double gamma, double distance_km,
                                      double loss_db_per_km);

    double gamma() const { return gamma_; }
    double transmission() const { return t_; }
    const std::optional<ChannelProvenance>& provenance() const { return prov_; }

    double gamma_t() const;  // gamma^T
    double gamma_r() const;  // gamma^(1-T)

  private:
    double gamma_, t_;
    std::optional<ChannelProvenance> prov_;
};

/// The three independent entries of the reduced two-qubit state written in
/// algebraic form: diag-corner a, central block b, diag-corner d, with
/// a + 2b + d = 1 and a >= d.
struct CoefficientsABD {
    double a, b, d;
};

CoefficientsABD coefficients(const ChannelPoint& pt);

/// The reduced state after the lossy fibers, in the ordered basis
/// {|++>, |+->, |-+>, |-->}:
///
///   [  a    0    0  -sqrt(ad) ]
///   [  0    b   -b      0     ]
///   [  0   -b    b      0     ]
///   [-sqrt(ad) 0 0      d     ]
DensityMatrix4 rho_unfiltered(const ChannelPoint& pt);

/// Two-term pure-state decomposition of the reduced state:
/// weight_psi on |Psi> = (N+^2|++> - N-^2|-->)/sqrt(N+^4 + N-^4) and
/// weight_phi on |Phi> = (|+-> - |-+>)/sqrt(2).
struct RhoEigenDecomposition {
    double weight_psi;
    double weight_phi;
    Vec4c psi;
    Vec4c phi;
};

RhoEigenDecomposition rho_eigendecomposition(const ChannelPoint& pt);

}  // namespace catqkd
