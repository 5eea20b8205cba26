#pragma once

#include <array>
#include <optional>
#include <vector>

#include "casimir/boundary.hpp"

namespace casimir {

// Entire function of k whose positive zeros are the longitudinal
// wavenumbers of the two-chamber problem. It does not depend on the
// transverse eigenvalue.
cplx h_function(cplx k, const PistonConfig& cfg);

// det(M_- - W M_+) built from the two boundary unitaries; proportional to
// h_function by a nonzero constant.
cplx det4_oracle(cplx k, const PistonConfig& cfg);

double small_k_coefficient(const PistonConfig& cfg);

struct SecularValue {
    double log_magnitude;  // ln|h(iz) e^{-zL}|
    int sign;
    std::optional<cplx> raw;  // h(iz) itself, when e^{zL} is representable
};

// h on the positive imaginary axis, scaled by e^{-zL}. With that scaling
//   g(z) = sum_j P_j(z) exp(-r_j z)
// with polynomial P_j of degree <= 4 and rates {0, 2L, 2a, 2(L-a), L}, so
// nothing overflows. Near z = 0 a Taylor series replaces the direct sum,
// because g = O(z^2) there by cancellation.
class ImaginaryAxis {
public:
    explicit ImaginaryAxis(const PistonConfig& cfg);

    double scaled(double z) const;       // g(z)
    double reduced(double z) const;      // g(z) / z^2
    double d_position(double z) const;   // d/da ln h(iz)
    double d_log_z(double z) const;      // d/dz ln[h(iz)/z^2] - L

    // g = lead + rest, lead = T0 (the a-independent, non-decaying product)
    struct Parts {
        double lead, lead_d, rest, rest_d;
    };
    Parts parts(double z) const;

    double small_k_coefficient() const { return -series_[0]; }

    // Scans (0, inf) for a sign change of g(z)/z^2. Throws ZeroModeError if
    // the k^2 coefficient vanishes, ZeroCrossing on a sign change.
    void require_definite_sign() const;
    int sign() const;

    const PistonConfig& config() const { return cfg_; }
    double series_radius() const { return z_series_; }

private:
    static constexpr int kDegree = 6;
    static constexpr int kSeriesTerms = 48;
    struct Term {
        std::array<double, kDegree> poly{};
        double rate = 0.0;
    };
    using Terms = std::array<Term, 5>;

    static double eval(const Terms& terms, double z, std::size_t first = 0);
    static double eval_d(const Terms& terms, double z, std::size_t first = 0);
    static std::vector<double> taylor(const Terms& terms, int count);
    static double horner(const std::vector<double>& c, double z);
    static double horner_d(const std::vector<double>& c, double z);

    PistonConfig cfg_;
    Terms g_;
    Terms da_;
    std::vector<double> series_;     // g/z^2 Taylor coefficients
    std::vector<double> da_series_;  // (d_a g)/z^2 Taylor coefficients
    double z_series_;
};

SecularValue log_h_imag(double z, const PistonConfig& cfg);
double d_lna_log_h(double z, const PistonConfig& cfg);

}  // namespace casimir
