#include "casimir/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;

// Index k of the nearest multiple k*pi/2, or nullopt-like sentinel when x is
// not within kAngleSnap of one.
bool quarter_turn(double x, long& k) {
    double q = std::nearbyint(x / (pi / 2));
    if (std::abs(x - q * (pi / 2)) < kAngleSnap) {
        k = static_cast<long>(q);
        return true;
    }
    return false;
}

}  // namespace

double exact_cos(double x) {
    long k;
    if (!quarter_turn(x, k)) return std::cos(x);
    static constexpr double table[4] = {1.0, 0.0, -1.0, 0.0};
    return table[((k % 4) + 4) % 4];
}

double exact_sin(double x) {
    long k;
    if (!quarter_turn(x, k)) return std::sin(x);
    static constexpr double table[4] = {0.0, 1.0, 0.0, -1.0};
    return table[((k % 4) + 4) % 4];
}

BoundaryUnitary BoundaryUnitary::make(double phase, double mix, Vec3 axis) {
    if (!std::isfinite(phase) || !std::isfinite(mix))
        throw ConfigError("boundary angles must be finite");

    // (phase, mix + pi) and (phase + pi, mix) give the same matrix.
    if (mix > pi / 2 || mix < -pi / 2) {
        double turns = std::floor((mix + pi / 2) / pi);
        mix -= turns * pi;
        phase += turns * pi;
        if (mix > pi / 2) mix = pi / 2;
        if (mix < -pi / 2) mix = -pi / 2;
    }
    if (phase > pi || phase < -pi) {
        phase = std::remainder(phase, 2 * pi);
    }

    BoundaryUnitary u;
    u.phase = phase;
    u.mix = mix;
    double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (norm == 0.0 || !std::isfinite(norm)) {
        if (exact_sin(mix) != 0.0)
            throw ConfigError("axis vector is zero but the mixing angle is not a multiple of pi");
        u.axis = {0.0, 0.0, 1.0};
    } else {
        u.axis = {axis[0] / norm, axis[1] / norm, axis[2] / norm};
    }
    return u;
}

void PistonConfig::validate() const {
    if (!(length > 0.0) || !std::isfinite(length))
        throw ConfigError("chamber length must be positive");
    if (!(position > 0.0 && position < length))
        throw ConfigError("piston position must lie strictly inside (0, L)");
    if (!diagnostic) {
        auto c = classify_extension(wall);
        if (c.kind != ExtensionClass::NoBoundStates)
            throw InadmissibleConfig(std::string("inadmissible: ") + to_string(c.kind));
    }
}

Eigen::Matrix2cd unitary_matrix(const BoundaryUnitary& u) {
    const cplx i(0.0, 1.0);
    const double c = u.cos_mix();
    const double s = u.sin_mix();
    const auto& v = u.axis;
    Eigen::Matrix2cd m;
    m(0, 0) = c + i * s * v[2];
    m(0, 1) = i * s * cplx(v[0], -v[1]);
    m(1, 0) = i * s * cplx(v[0], v[1]);
    m(1, 1) = c - i * s * v[2];
    return cplx(u.cos_phase(), u.sin_phase()) * m;
}

BoundStates bound_state_momenta(const BoundaryUnitary& wall) {
    BoundStates out;
    for (double sgn : {1.0, -1.0}) {
        double half = 0.5 * (wall.phase + sgn * wall.mix);
        double c = exact_cos(half);
        double s = exact_sin(half);
        if (c == 0.0) continue;  // tan pole: kappa runs off to infinity
        double kappa = -s / c;
        if (kappa == 0.0)
            out.zero_mode = true;
        else if (kappa > 0.0)
            out.momenta.push_back(kappa);
    }
    std::sort(out.momenta.begin(), out.momenta.end());
    return out;
}

Classification classify_extension(const BoundaryUnitary& wall) {
    auto b = bound_state_momenta(wall);
    static constexpr ExtensionClass kinds[3] = {
        ExtensionClass::NoBoundStates, ExtensionClass::OneBoundState, ExtensionClass::TwoBoundStates};
    return {kinds[b.momenta.size()], b.zero_mode};
}

const char* to_string(ExtensionClass c) {
    switch (c) {
        case ExtensionClass::NoBoundStates: return "no bound states";
        case ExtensionClass::OneBoundState: return "1 bound state";
        case ExtensionClass::TwoBoundStates: return "2 bound states";
    }
    return "?";
}

}  // namespace casimir
