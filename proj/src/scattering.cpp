#include "casimir/scattering.hpp"

#include "casimir/errors.hpp"

namespace casimir {

namespace {
constexpr cplx I(0.0, 1.0);
constexpr double kTinyDenominator = 1e-300;
}

cplx d_function(cplx k, const BoundaryUnitary& wall) {
    const cplx k2 = k * k;
    return (k2 + 1.0) * wall.cos_phase() + (k2 - 1.0) * wall.cos_mix() + 2.0 * I * k * wall.sin_phase();
}

WallNumerators wall_numerators(cplx k, const BoundaryUnitary& wall) {
    const cplx k2 = k * k;
    const double sg = wall.sin_mix();
    const auto& q = wall.axis;
    const cplx even = (k2 + 1.0) * wall.cos_mix() + (k2 - 1.0) * wall.cos_phase();
    const cplx odd = 2.0 * I * k * q[2] * sg;
    return {
        even + odd,
        even - odd,
        -2.0 * I * k * cplx(q[0], -q[1]) * sg,
        -2.0 * I * k * cplx(q[0], q[1]) * sg,
    };
}

ScatteringData amplitudes(cplx k, const BoundaryUnitary& wall, double position) {
    ScatteringData out;
    out.k = k;
    out.d_value = d_function(k, wall);
    if (std::abs(out.d_value) < kTinyDenominator)
        throw DegenerateWall("D vanishes: k sits on a bound-state pole of the wall");
    auto num = wall_numerators(k, wall);
    out.rho_right = num.rho_right;
    out.rho_left = num.rho_left;
    out.tau_right = num.tau_right;
    out.tau_left = num.tau_left;
    const cplx inv = 1.0 / out.d_value;
    out.r_right = num.rho_right * inv;
    out.r_left = num.rho_left * inv;
    out.t_right = num.tau_right * inv;
    out.t_left = num.tau_left * inv;
    out.shift_right = std::exp(2.0 * I * k * position);
    out.shift_left = std::exp(-2.0 * I * k * position);
    return out;
}

cplx s_matrix_det(cplx k, const BoundaryUnitary& wall) {
    const cplx d = d_function(k, wall);
    if (std::abs(d) < kTinyDenominator)
        throw DegenerateWall("D vanishes: k sits on a bound-state pole of the wall");
    return -d_function(-k, wall) / d;
}

}  // namespace casimir
