#pragma once

#include <utility>

#include "catqkd/cat_protocol.hpp"
#include "catqkd/qubit_core.hpp"

namespace catqkd {

struct FilterValidity {
    bool valid;
    double margin;  // min eigenvalue of I - M^dag M
};

/// Reports whether M is a valid local filter (I - M^dag M positive
/// semidefinite) together with its PSD margin.
FilterValidity validate_filter(const Mat2c& m);

/// A 2x2 local contraction applied by one party. Construction enforces the
/// filter validity condition (PSD margin >= -1e-12).
class LocalFilter {
  public:
    explicit LocalFilter(const Mat2c& m);

    const Mat2c& mat() const { return m_; }
    double psd_margin() const { return margin_; }

  private:
    Mat2c m_;
    double margin_;
};

struct FilteredState {
    DensityMatrix4 state;
    double success_prob;
};

/// Optimal filters M_A = M_B = diag((d/a)^{1/4}, 1) from the state
/// coefficients. Requires a > 0 (rho with no |++> population has no
/// coefficient-form filter; use the ChannelPoint overload).
std::pair<LocalFilter, LocalFilter> optimal_filters(const CoefficientsABD& coeffs);

/// Same filters from the channel point. Since d/a = N_-^4/N_+^4 identically,
/// the diagonal is sqrt((1 - gamma^T)/(1 + gamma^T)), which stays well defined
/// in the lossless limit T = 1 where a = d = 0.
std::pair<LocalFilter, LocalFilter> optimal_filters(const ChannelPoint& pt);

/// (M_A x M_B) rho (M_A x M_B)^dag, renormalized; success_prob is the trace
/// before renormalization. Works for arbitrary valid filters and states.
FilteredState apply_filters(const DensityMatrix4& rho, const LocalFilter& ma,
                            const LocalFilter& mb);

/// The filtered state in closed form,
///   1/(2(b+sqrt(ad))) * [[sqrt(ad),0,0,-sqrt(ad)], [0,b,-b,0], [0,-b,b,0],
///                        [-sqrt(ad),0,0,sqrt(ad)]],
/// with p = 2 sqrt(d/a) (b + sqrt(ad)). Requires a > 0 and d > 0.
FilteredState filtered_state_closed_form(const CoefficientsABD& coeffs);

/// Closed form from the channel point: the normalized entries depend only on
/// gamma^{2(1-T)} and p = (1-gamma^T)^2/(1-gamma^2); valid for every T in (0,1].
FilteredState filtered_state_closed_form(const ChannelPoint& pt);

/// p = (1 - gamma^T)^2 / (1 - gamma^2).
double success_prob_closed_form(const ChannelPoint& pt);

/// Full matrix route: rho_unfiltered -> optimal filters -> apply_filters.
FilteredState filter_pipeline(const ChannelPoint& pt);

/// Largest |off-diagonal| of rho expressed in the Bell basis
/// {Phi+, Phi-, Psi+, Psi-}; ~0 certifies a Bell-diagonal state.
double bell_basis_offdiag_max(const DensityMatrix4& rho);

}  // namespace catqkd
