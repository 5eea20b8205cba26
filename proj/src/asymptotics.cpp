#include "casimir/asymptotics.hpp"

#include <cmath>

namespace casimir {

std::pair<double, double> m_pm(double x, double y) {
    const double cx = exact_cos(x), cy = exact_cos(y);
    return {cx + cy, cx - cy};
}

double omega_n(int n, double x, double y) {
    const auto [plus, minus] = m_pm(x, y);
    const double s = exact_sin(x);
    if (plus == 0.0) {
        if (s == 0.0) return 0.0;
        return -std::pow(exact_cos(x) / s, n) / n;
    }
    double sum = 0.0;
    for (int j = 0; j <= n / 2; ++j) {
        double lg = std::lgamma(n - j) - std::lgamma(j + 1.0) - std::lgamma(n - 2.0 * j + 1.0);
        double mag = std::exp(lg + (n - 2 * j) * std::log(2.0));
        sum += mag * std::pow(s, n - 2 * j) * std::pow(minus, j) / std::pow(plus, n - j);
    }
    return (n % 2 == 1 ? 1.0 : -1.0) * sum;
}

namespace {
int pair_degree(double x, double y) {
    const double plus = m_pm(x, y).first;
    if (plus != 0.0) return 2;
    return exact_sin(x) != 0.0 ? 1 : 0;
}
}  // namespace

int chi_exponent(double theta, double gamma, double alpha, double beta) {
    // Each pair contributes its polynomial degree in z; chi = sum - 2.
    return pair_degree(theta, gamma) + pair_degree(alpha, beta) - 2;
}

double tau_constant(double x, double y) {
    const auto [plus, minus] = m_pm(x, y);
    if (plus != 0.0) return std::log(std::abs(plus));
    const double s = exact_sin(x);
    if (s != 0.0) return std::log(std::abs(2.0 * s));
    return std::log(std::abs(minus));
}

AsymptoticData asymptotic_data(const PistonConfig& cfg, int order) {
    const auto& w = cfg.wall;
    const auto& o = cfg.outer;
    AsymptoticData d;
    d.order = order;
    d.chi = chi_exponent(w.phase, w.mix, o.phase, o.mix);
    d.tau_sum = tau_constant(w.phase, w.mix) + tau_constant(o.phase, o.mix);
    d.omega.resize(order);
    for (int n = 1; n <= order; ++n) d.omega[n - 1] = omega_n(n, w.phase, w.mix) + omega_n(n, o.phase, o.mix);
    return d;
}

double subtraction_term(double z, const AsymptoticData& data, double length) {
    double s = z * length + data.chi * std::log(z);
    double zinv = 1.0 / z, p = 1.0;
    for (int n = 1; n <= data.order; ++n) {
        p *= zinv;
        s += data.omega[n - 1] * p;
    }
    return s;
}

std::vector<cplx> pair_roots(double x, double y) {
    const auto [plus, minus] = m_pm(x, y);
    const double s = exact_sin(x);
    if (plus == 0.0) {
        if (s == 0.0) return {};
        return {cplx(minus / (2.0 * s), 0.0)};
    }
    // -plus z^2 - 2 s z + minus = 0
    const cplx disc = std::sqrt(cplx(s * s + plus * minus, 0.0));
    // Pick the numerically stable branch first.
    const cplx big = (s >= 0.0) ? (-s - disc) : (-s + disc);
    if (big == 0.0) return {cplx(0.0), cplx(0.0)};
    return {big / plus, -minus / big};
}

double omega_series_onset(const AsymptoticData& data) {
    double onset = 0.0;
    for (int n = 2; n <= data.order; ++n) {
        double prev = data.omega[n - 2], cur = data.omega[n - 1];
        if (prev != 0.0) onset = std::max(onset, std::abs(cur / prev));
        else if (cur != 0.0) onset = std::max(onset, std::abs(cur));
    }
    return onset;
}

}  // namespace casimir
