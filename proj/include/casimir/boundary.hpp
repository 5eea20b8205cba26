#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Core>

namespace casimir {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

// Angles closer than this to a multiple of pi/2 are snapped, so that the
// structural zeros (cos(pi/2), sin(pi), ...) come out exactly.
inline constexpr double kAngleSnap = 1e-14;

double exact_cos(double x);
double exact_sin(double x);

// U = e^{i phase} [cos(mix) I + i sin(mix) axis.sigma]
struct BoundaryUnitary {
    double phase = 0.0;
    double mix = 0.0;
    Vec3 axis{0.0, 0.0, 1.0};

    // Reduces the angles to phase in [-pi, pi], mix in [-pi/2, pi/2] and
    // normalizes the axis. A zero axis is only accepted when sin(mix) = 0.
    static BoundaryUnitary make(double phase, double mix, Vec3 axis);

    double cos_phase() const { return exact_cos(phase); }
    double sin_phase() const { return exact_sin(phase); }
    double cos_mix() const { return exact_cos(mix); }
    double sin_mix() const { return exact_sin(mix); }
};

struct PistonConfig {
    BoundaryUnitary outer;
    BoundaryUnitary wall;
    double length = 1.0;
    double position = 0.5;
    // Skips the wall bound-state gate; the force routines still reject
    // configurations whose secular function changes sign.
    bool diagnostic = false;

    void validate() const;
};

Eigen::Matrix2cd unitary_matrix(const BoundaryUnitary& u);

struct BoundStates {
    std::vector<double> momenta;  // sorted, strictly positive
    bool zero_mode = false;
};

BoundStates bound_state_momenta(const BoundaryUnitary& wall);

enum class ExtensionClass { NoBoundStates, OneBoundState, TwoBoundStates };

struct Classification {
    ExtensionClass kind;
    bool zero_mode;
};

Classification classify_extension(const BoundaryUnitary& wall);

const char* to_string(ExtensionClass c);

}  // namespace casimir
