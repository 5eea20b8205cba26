#include "casimir/secular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "casimir/errors.hpp"
#include "casimir/scattering.hpp"

namespace casimir {

namespace {

constexpr cplx I(0.0, 1.0);

struct Pair {
    double plus, minus, sin_first;
};

Pair pair_of(const BoundaryUnitary& u) {
    double c1 = u.cos_phase(), c2 = u.cos_mix();
    return {c1 + c2, c1 - c2, u.sin_phase()};
}

// Largest positive real root of m_- - 2 s z - m_+ z^2, or 0.
double largest_positive_root(const Pair& p) {
    double best = 0.0;
    if (p.plus == 0.0) {
        if (p.sin_first != 0.0) best = std::max(best, p.minus / (2.0 * p.sin_first));
        return best;
    }
    double disc = p.sin_first * p.sin_first + p.plus * p.minus;
    if (disc < 0.0) return best;
    double sq = std::sqrt(disc);
    for (double r : {(-p.sin_first + sq) / p.plus, (-p.sin_first - sq) / p.plus})
        best = std::max(best, r);
    return best;
}

}  // namespace

cplx h_function(cplx k, const PistonConfig& cfg) {
    const auto& out = cfg.outer;
    const double L = cfg.length, a = cfg.position;
    const double mp = out.cos_phase() + out.cos_mix();
    const double mm = out.cos_phase() - out.cos_mix();
    const double sa = out.sin_phase(), sb = out.sin_mix();
    const auto& n = out.axis;
    const cplx k2 = k * k;

    auto w = wall_numerators(k, cfg.wall);
    const cplx fwd = std::exp(I * k * (2.0 * a - L));
    const cplx bwd = std::exp(-I * k * (2.0 * a - L));

    const cplx direct = d_function(k, cfg.wall) * std::exp(-I * k * L) * (mm + k2 * mp + 2.0 * I * k * sa) +
                        d_function(-k, cfg.wall) * std::exp(I * k * L) * (mm + k2 * mp - 2.0 * I * k * sa);
    const cplx reflected = (w.rho_left * fwd + w.rho_right * bwd) * (mm - k2 * mp) +
                           2.0 * I * k * n[2] * sb * (w.rho_left * fwd - w.rho_right * bwd);
    const cplx transmitted = 2.0 * I * k * sb * (cplx(n[0], n[1]) * w.tau_right + cplx(n[0], -n[1]) * w.tau_left);
    return direct + reflected + transmitted;
}

cplx det4_oracle(cplx k, const PistonConfig& cfg) {
    const Eigen::Matrix2cd outer = unitary_matrix(cfg.outer);
    const Eigen::Matrix2cd wall = unitary_matrix(cfg.wall);
    Eigen::Matrix4cd W = Eigen::Matrix4cd::Zero();
    W(0, 0) = outer(0, 0);
    W(0, 3) = outer(0, 1);
    W(3, 0) = outer(1, 0);
    W(3, 3) = outer(1, 1);
    W(1, 1) = wall(0, 0);
    W(1, 2) = wall(0, 1);
    W(2, 1) = wall(1, 0);
    W(2, 2) = wall(1, 1);

    const cplx ea = std::exp(I * k * cfg.position), ea_inv = std::exp(-I * k * cfg.position);
    const cplx eL = std::exp(I * k * cfg.length), eL_inv = std::exp(-I * k * cfg.length);
    auto block = [&](double sgn) {
        const cplx p = 1.0 + sgn * k, m = 1.0 - sgn * k;
        Eigen::Matrix4cd M = Eigen::Matrix4cd::Zero();
        M(0, 0) = p;
        M(0, 1) = m;
        M(1, 0) = ea * m;
        M(1, 1) = ea_inv * p;
        M(2, 2) = ea * p;
        M(2, 3) = ea_inv * m;
        M(3, 2) = eL * m;
        M(3, 3) = eL_inv * p;
        return M;
    };
    const Eigen::Matrix4cd A = block(-1.0) - W * block(1.0);
    return A.determinant();
}

double small_k_coefficient(const PistonConfig& cfg) {
    const double L = cfg.length, a = cfg.position;
    const auto& o = cfg.outer;
    const auto& w = cfg.wall;
    const double ca = o.cos_phase(), sa = o.sin_phase(), cb = o.cos_mix(), sb = o.sin_mix();
    const double ct = w.cos_phase(), st = w.sin_phase(), cg = w.cos_mix(), sg = w.sin_mix();
    const auto& n = o.axis;
    const auto& q = w.axis;
    const double mm = ca - cb;
    return 8.0 * ct * ca - 8.0 * cg * cb + 4.0 * st * (L * mm - 2.0 * sa) +
           4.0 * (ct - cg) * (a * (a - L) * mm + L * sa) -
           4.0 * (2.0 * a - L) * (-mm * q[2] * sg + (cg - ct) * n[2] * sb) +
           8.0 * sb * sg * (n[0] * q[0] + n[1] * q[1] + n[2] * q[2]);
}

ImaginaryAxis::ImaginaryAxis(const PistonConfig& cfg) : cfg_(cfg) {
    const double L = cfg.length, a = cfg.position;
    const Pair w = pair_of(cfg.wall), o = pair_of(cfg.outer);
    const double sg = cfg.wall.sin_mix(), sb = cfg.outer.sin_mix();
    const double q3 = cfg.wall.axis[2], n3 = cfg.outer.axis[2];
    const auto& n = cfg.outer.axis;
    const auto& q = cfg.wall.axis;

    using Quad = std::array<double, 3>;
    auto mul = [](const Quad& x, const Quad& y) {
        std::array<double, kDegree> r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i + j] += x[i] * y[j];
        return r;
    };
    const Quad psi_w{w.minus, -2.0 * w.sin_first, -w.plus};
    const Quad psi_w_neg{w.minus, 2.0 * w.sin_first, -w.plus};
    const Quad psi_o{o.minus, -2.0 * o.sin_first, -o.plus};
    const Quad psi_o_neg{o.minus, 2.0 * o.sin_first, -o.plus};
    const Quad rho_left{-w.minus, 2.0 * q3 * sg, -w.plus};
    const Quad rho_right{-w.minus, -2.0 * q3 * sg, -w.plus};
    const Quad outer_left{o.minus, -2.0 * n3 * sb, o.plus};
    const Quad outer_right{o.minus, 2.0 * n3 * sb, o.plus};

    g_[0] = {mul(psi_w, psi_o), 0.0};
    g_[1] = {mul(psi_w_neg, psi_o_neg), 2.0 * L};
    g_[2] = {mul(rho_left, outer_left), 2.0 * a};
    g_[3] = {mul(rho_right, outer_right), 2.0 * (L - a)};
    g_[4].rate = L;
    g_[4].poly[2] = -8.0 * sb * sg * (n[0] * q[0] + n[1] * q[1]);

    // d/da only touches the 2a and 2(L-a) exponentials.
    for (auto& t : da_) t.rate = 0.0;
    da_[2].rate = g_[2].rate;
    da_[3].rate = g_[3].rate;
    for (int i = 0; i + 1 < kDegree; ++i) {
        da_[2].poly[i + 1] = -2.0 * g_[2].poly[i];
        da_[3].poly[i + 1] = 2.0 * g_[3].poly[i];
    }

    series_ = taylor(g_, kSeriesTerms);
    da_series_ = taylor(da_, kSeriesTerms);
    z_series_ = std::min(1.0, 1.0 / L);
}

std::vector<double> ImaginaryAxis::taylor(const Terms& terms, int count) {
    // Coefficients of z^2 .. z^{count+1}; the z^0 and z^1 coefficients cancel
    // identically (h is even in k with a double zero at the origin).
    std::vector<double> c(count, 0.0);
    for (const auto& t : terms) {
        std::vector<double> ex(count + 2);
        ex[0] = 1.0;
        for (int j = 1; j < count + 2; ++j) ex[j] = ex[j - 1] * (-t.rate) / j;
        for (int n = 2; n < count + 2; ++n) {
            double s = 0.0;
            for (int m = 0; m < kDegree && m <= n; ++m) s += t.poly[m] * ex[n - m];
            c[n - 2] += s;
        }
    }
    return c;
}

double ImaginaryAxis::horner(const std::vector<double>& c, double z) {
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
    return s;
}

double ImaginaryAxis::horner_d(const std::vector<double>& c, double z) {
    double s = 0.0;
    for (std::size_t n = c.size() - 1; n >= 1; --n) s = s * z + n * c[n];
    return s;
}

double ImaginaryAxis::eval(const Terms& terms, double z, std::size_t first) {
    double total = 0.0;
    for (std::size_t j = first; j < terms.size(); ++j) {
        const auto& t = terms[j];
        double p = 0.0;
        for (int m = kDegree - 1; m >= 0; --m) p = p * z + t.poly[m];
        if (p != 0.0) total += p * std::exp(-t.rate * z);
    }
    return total;
}

double ImaginaryAxis::eval_d(const Terms& terms, double z, std::size_t first) {
    double total = 0.0;
    for (std::size_t j = first; j < terms.size(); ++j) {
        const auto& t = terms[j];
        double p = 0.0, dp = 0.0;
        for (int m = kDegree - 1; m >= 0; --m) {
            dp = dp * z + p;
            p = p * z + t.poly[m];
        }
        double v = dp - t.rate * p;
        if (v != 0.0) total += v * std::exp(-t.rate * z);
    }
    return total;
}

double ImaginaryAxis::scaled(double z) const {
    if (z < z_series_) return z * z * horner(series_, z);
    return eval(g_, z);
}

double ImaginaryAxis::reduced(double z) const {
    if (z < z_series_) return horner(series_, z);
    return eval(g_, z) / (z * z);
}

double ImaginaryAxis::d_position(double z) const {
    double num, den;
    if (z < z_series_) {
        num = horner(da_series_, z);
        den = horner(series_, z);
    } else {
        num = eval(da_, z);
        den = eval(g_, z);
    }
    if (num == 0.0) return 0.0;
    if (den == 0.0) throw ZeroCrossing("secular function vanishes on the imaginary axis", z);
    return num / den;
}

double ImaginaryAxis::d_log_z(double z) const {
    if (z < z_series_) {
        double den = horner(series_, z);
        if (den == 0.0) throw ZeroCrossing("secular function vanishes on the imaginary axis", z);
        return horner_d(series_, z) / den;
    }
    double den = eval(g_, z);
    if (den == 0.0) throw ZeroCrossing("secular function vanishes on the imaginary axis", z);
    return eval_d(g_, z) / den - 2.0 / z;
}

ImaginaryAxis::Parts ImaginaryAxis::parts(double z) const {
    Terms lead{};
    lead[0] = g_[0];
    return {eval(lead, z), eval_d(lead, z), eval(g_, z, 1), eval_d(g_, z, 1)};
}

int ImaginaryAxis::sign() const { return series_[0] > 0 ? 1 : (series_[0] < 0 ? -1 : 0); }

void ImaginaryAxis::require_definite_sign() const {
    const int s0 = sign();
    if (s0 == 0)
        throw ZeroModeError("k^2 coefficient of the secular function vanishes (longitudinal zero mode)");

    const double L = cfg_.length;
    const double m = std::min(cfg_.position, L - cfg_.position);
    const double root = std::max(largest_positive_root(pair_of(cfg_.wall)), largest_positive_root(pair_of(cfg_.outer)));
    const double z_end = std::max({2.0 * root + 1.0, 25.0 / m, 25.0 / L});
    const double step_target = 0.05 * std::min({1.0, 1.0 / L, std::max(root, 0.02)});
    const long count = std::min<long>(1000000, static_cast<long>(std::ceil(z_end / step_target)));
    const double step = z_end / count;

    auto check = [&](double z) {
        double v = reduced(z);
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s != s0)
            throw ZeroCrossing("secular function changes sign on the imaginary axis near z = " + std::to_string(z) +
                                   " (bound state or negative mode)",
                               z);
    };
    for (double z : {1e-8, 1e-6, 1e-4}) check(z * step);
    for (long i = 1; i <= count; ++i) check(i * step);
}

SecularValue log_h_imag(double z, const PistonConfig& cfg) {
    ImaginaryAxis axis(cfg);
    double g = axis.scaled(z);
    SecularValue v;
    v.log_magnitude = std::log(std::abs(g));
    v.sign = g > 0 ? 1 : (g < 0 ? -1 : 0);
    if (z * cfg.length < 700.0) v.raw = h_function(cplx(0.0, z), cfg);
    return v;
}

double d_lna_log_h(double z, const PistonConfig& cfg) { return ImaginaryAxis(cfg).d_position(z); }

}  // namespace casimir
