#pragma once

#include "casimir/boundary.hpp"

namespace casimir {

// Scattering of the wall, seen as a point interaction on the real line.
// The rho/tau numerators carry the amplitudes before the shared division by D.
struct ScatteringData {
    cplx k;
    cplx d_value;
    cplx rho_right, rho_left;
    cplx tau_right, tau_left;
    cplx r_right, r_left;
    cplx t_right, t_left;
    // Phase factors produced by moving the wall from x = 0 to x = a; the
    // shifted reflections are shift_right * r_right and shift_left * r_left.
    cplx shift_right, shift_left;

    cplx shifted_r_right() const { return shift_right * r_right; }
    cplx shifted_r_left() const { return shift_left * r_left; }
};

cplx d_function(cplx k, const BoundaryUnitary& wall);

// Numerators only; entire in k, no division.
struct WallNumerators {
    cplx rho_right, rho_left, tau_right, tau_left;
};
WallNumerators wall_numerators(cplx k, const BoundaryUnitary& wall);

ScatteringData amplitudes(cplx k, const BoundaryUnitary& wall, double position);

cplx s_matrix_det(cplx k, const BoundaryUnitary& wall);

}  // namespace casimir
