#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "casimir/asymptotics.hpp"
#include "casimir/boundary.hpp"
#include "casimir/spectra.hpp"

namespace casimir {

// Meromorphic data of the transverse zeta function sum_{lambda > 0} d lambda^{-2s}.
struct ZetaNData {
    double zeta_minus1 = 0.0;
    double zeta_prime_minus1 = 0.0;
    double zeta_0 = 0.0;
    double zeta_prime_0 = 0.0;
    // i -> (residue, finite part) at s = (i - 1)/2
    std::map<int, std::pair<double, double>> half_points;
};

struct ForceResult {
    double force = 0.0;
    double quadrature_error = 0.0;
    int modes_used = 0;
    double tail_bound = 0.0;
    bool zero_modes_included = false;
    std::vector<double> per_mode;  // -d/(2 pi) * integral, in spectrum order
};

class ToleranceNotMet : public std::runtime_error {
public:
    ToleranceNotMet(const std::string& what, ForceResult best) : std::runtime_error(what), best(std::move(best)) {}
    ForceResult best;
};

struct AmbiguityNote {
    bool zeta_minus1 = false;
    bool zeta_0 = false;
    std::vector<int> residue_indices;  // half-point indices with nonzero residue
    bool zero_mode_residue = false;    // lambda = 0 modes with omega_1 != 0

    bool any() const { return zeta_minus1 || zeta_0 || !residue_indices.empty() || zero_mode_residue; }
};

struct EnergyReport {
    double pole_coefficient = 0.0;  // of 1/eps, s = -1/2 + eps; also the ln mu^2 coefficient up to a factor
    double finite_part = 0.0;
    double z_at_minus_half = 0.0;
    AmbiguityNote ambiguity_note;
};

struct PoleAndFinite {
    double pole = 0.0;
    double finite = 0.0;
};

std::complex<double> zeta_lambda_strip(std::complex<double> s, double lambda, const PistonConfig& cfg);

struct SubtractedZeta {
    double value = 0.0;    // finite part at s (the full value away from poles)
    double residue = 0.0;  // coefficient of 1/(s + 1/2), only from lambda = 0 modes
    double quadrature_error = 0.0;
    int modes_used = 0;
};

SubtractedZeta big_z(double s, const PistonConfig& cfg, const TransverseSpectrum& spectrum, int order,
                     double tol = 1e-11, int threads = 0);

PoleAndFinite a_i_terms(const AsymptoticData& data, const ZetaNData& zn, double length);

// order < 0 means D = dimension + 1.
EnergyReport casimir_energy_report(const PistonConfig& cfg, const TransverseSpectrum& spectrum, const ZetaNData& zn,
                                   int order = -1, int threads = 0);

struct ForceOptions {
    double tol = 1e-8;
    int threads = 0;  // 0: hardware concurrency
    bool keep_per_mode = false;
};

ForceResult casimir_force(const PistonConfig& cfg, const TransverseSpectrum& spectrum, const ForceOptions& opts = {});

enum class Stability { Stable, Unstable };

struct Equilibrium {
    double position;
    Stability kind;
};

// Sign changes of a sampled force profile. With a force callback each
// crossing is refined by bisection, otherwise by linear interpolation.
std::vector<Equilibrium> classify_equilibria(const std::vector<std::pair<double, double>>& profile,
                                             const std::function<double(double)>& force = {}, double tol = 1e-10);

const char* to_string(Stability s);

}  // namespace casimir
