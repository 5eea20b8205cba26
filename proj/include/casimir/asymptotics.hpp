#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "casimir/boundary.hpp"

namespace casimir {

// Large-z data of ln[z^{-2} h(iz)] ~ zL + chi ln z + tau + sum_n omega_n z^{-n}.
struct AsymptoticData {
    int chi = 0;
    std::vector<double> omega;  // omega[n-1] = omega_n(theta, gamma) + omega_n(alpha, beta)
    double tau_sum = 0.0;       // informational; never enters a derivative
    int order = 0;

    double omega_at(int n) const { return n >= 1 && n <= order ? omega[n - 1] : 0.0; }
};

std::pair<double, double> m_pm(double x, double y);

double omega_n(int n, double x, double y);

int chi_exponent(double theta, double gamma, double alpha, double beta);

double tau_constant(double x, double y);

AsymptoticData asymptotic_data(const PistonConfig& cfg, int order);

double subtraction_term(double z, const AsymptoticData& data, double length);

// Roots of m_- - 2 z sin x - z^2 m_+ (0, 1 or 2 of them, possibly complex).
// ln of that quadratic has omega_n = -sum_i root_i^n / n.
std::vector<cplx> pair_roots(double x, double y);

// z beyond which the omega series terms shrink monotonically.
double omega_series_onset(const AsymptoticData& data);

}  // namespace casimir
