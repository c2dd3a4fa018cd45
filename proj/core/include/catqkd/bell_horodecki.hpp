#pragma once

#include "catqkd/cat_protocol.hpp"
#include "catqkd/qubit_core.hpp"

namespace catqkd {

/// Four measurement directions plus the mixing angle varphi in [0, pi/4]
/// (named varphi to keep it apart from the source phase phi).
struct BellSettings {
    MeasurementVector a1, a2, b1, b2;
    double varphi;
};

struct ChshResult {
    double s_max;
    BellSettings settings;
    SingularTriple singular;
};

/// Maximal CHSH value of a two-qubit state: S_max = 2 sqrt(s1^2 + s2^2) for
/// the two largest singular values of its correlation matrix, with achieving
/// settings a1 = cos(varphi) l1 + sin(varphi) l2, a2 = cos(varphi) l1 -
/// sin(varphi) l2, b1 = r1, b2 = r2, cos(varphi) = s1/sqrt(s1^2 + s2^2).
ChshResult s_max_from_state(const DensityMatrix4& rho);

/// <S> = (a1 + a2) . C . b1 + (a1 - a2) . C . b2 for
/// S = A1xB1 + A2xB1 + A1xB2 - A2xB2.
double chsh_value(const DensityMatrix4& rho, const BellSettings& settings);

/// S_max = 2 sqrt(1 + gamma^{4(1-T)}) for the optimally filtered state.
double s_max_closed_form(const ChannelPoint& pt);

/// The fixed-axis achieving measurements for the filtered state:
/// A1 = cos(varphi) sx + sin(varphi) sy, A2 = cos(varphi) sx - sin(varphi) sy,
/// B1 = -sx, B2 = -sy, with cos(varphi) = 2/S_max.
BellSettings canonical_settings(const ChannelPoint& pt);

/// Independent maximizer of chsh_value over measurement directions. For fixed
/// (b1, b2) the optimal a-vectors are analytic (a_i parallel to C b1 +- C b2),
/// so the search runs over the b-sphere pair only: a coarse polar/azimuthal
/// grid (coarse_steps azimuthal x coarse_steps/2 polar per vector) followed by
/// compass refinement on the four angles with refine_iters step halvings.
double brute_force_s_max(const DensityMatrix4& rho, int coarse_steps = 24,
                         int refine_iters = 60);

}  // namespace catqkd
