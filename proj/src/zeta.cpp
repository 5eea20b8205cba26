#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/digamma.hpp>

#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/secular.hpp"
#include "casimir/special.hpp"
#include "casimir/zeta_force.hpp"

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;
using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::tanh_sinh;

// ln(sinh u) without overflow.
double log_sinh(double u) {
    if (u < 20.0) return std::log(std::sinh(u));
    return u - std::log(2.0) + std::log1p(-std::exp(-2.0 * u));
}

// d/dz { ln[h(iz)/z^2] - subtraction_term(z) }.
//
// For large z the leading product factorizes over the roots r_i of the two
// boundary quadratics, and the subtracted sum has the closed form
// sum_i (r_i/z)^{N+1} / (z - r_i), which avoids cancelling O(1/z) pieces.
class SubtractedDerivative {
public:
    SubtractedDerivative(const ImaginaryAxis& axis, const AsymptoticData& data) : axis_(axis), data_(data) {
        const auto& cfg = axis.config();
        for (auto r : pair_roots(cfg.wall.phase, cfg.wall.mix)) roots_.push_back(r);
        for (auto r : pair_roots(cfg.outer.phase, cfg.outer.mix)) roots_.push_back(r);
        double radius = 0.0;
        for (auto r : roots_) radius = std::max(radius, std::abs(r));
        split_ = std::max({2.0 * radius, 2.0 * axis.series_radius(), 1.0});
    }

    double operator()(double z) const {
        if (!(z < 1e150)) return 0.0;
        if (z < split_) {
            double s = axis_.d_log_z(z) - data_.chi / z;
            double zinv = 1.0 / z, p = zinv;
            for (int n = 1; n <= data_.order; ++n) {
                p *= zinv;
                s += n * data_.omega[n - 1] * p;
            }
            return s;
        }
        cplx algebraic = 0.0;
        for (auto r : roots_) algebraic += std::pow(r / z, data_.order + 1) / (z - r);
        if (z > 1e60) return algebraic.real();  // every exponential has underflowed
        const auto p = axis_.parts(z);
        const double decaying = (p.rest_d - p.rest * p.lead_d / p.lead) / (p.lead + p.rest);
        return algebraic.real() + decaying;
    }

private:
    const ImaginaryAxis& axis_;
    const AsymptoticData& data_;
    std::vector<cplx> roots_;
    double split_;
};

struct Integral {
    double value, error;
};

template <class F>
Integral half_line(F f, double tol) {
    exp_sinh<double> integrator;
    double err = 0.0, l1 = 0.0;
    double v = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), tol, &err, &l1);
    return {v, err};
}

template <class F>
Integral finite(F f, double lo, double hi, double tol) {
    tanh_sinh<double> integrator;
    double err = 0.0, l1 = 0.0;
    double v = integrator.integrate(f, lo, hi, tol, &err, &l1);
    return {v, err};
}

template <class F>
Integral one_to_inf(F f, double tol) {
    exp_sinh<double> integrator;
    double err = 0.0, l1 = 0.0;
    double v = integrator.integrate(f, 1.0, std::numeric_limits<double>::infinity(), tol, &err, &l1);
    return {v, err};
}

}  // namespace

std::complex<double> zeta_lambda_strip(std::complex<double> s, double lambda, const PistonConfig& cfg) {
    if (!(s.real() > 0.5 && s.real() < 1.0)) throw OutOfStrip("zeta_lambda_strip needs 1/2 < Re s < 1");
    if (!(lambda > 0.0)) throw std::invalid_argument("zeta_lambda_strip needs lambda > 0");
    const ImaginaryAxis axis(cfg);
    const AsymptoticData bare = asymptotic_data(cfg, 0);
    const SubtractedDerivative log_derivative(axis, bare);  // d/dz ln[h/z^2] - L - chi/z
    const double L = cfg.length;
    const cplx p = 1.0 - 2.0 * s;

    // z = lambda cosh u; the constant L in d/dz ln[h/z^2] integrates in closed form.
    const cplx closed = L * std::exp(p * std::log(lambda)) * beta_function(s - 0.5, 1.0 - s) / 2.0;

    auto weight = [&](double u) { return std::exp(p * (std::log(lambda) + log_sinh(u))); };
    auto part = [&](double u, bool imag) {
        if (u <= 0.0 || u > 700.0) return 0.0;
        const double z = lambda * std::cosh(u);
        cplx v = weight(u) * (log_derivative(z) + bare.chi / z);
        return imag ? v.imag() : v.real();
    };
    const double tol = 1e-12;
    auto re = half_line([&](double u) { return part(u, false); }, tol);
    auto im = half_line([&](double u) { return part(u, true); }, tol);
    return std::sin(pi * s) / pi * (closed + cplx(re.value, im.value));
}

SubtractedZeta big_z(double s, const PistonConfig& cfg, const TransverseSpectrum& spectrum, int order, double tol,
                     int threads) {
    if (!(s > -1.0 && s < 1.0)) throw OutOfStrip("big_z needs -1 < s < 1");
    cfg.validate();
    const ImaginaryAxis axis(cfg);
    axis.require_definite_sign();
    const AsymptoticData data = asymptotic_data(cfg, order);
    const SubtractedDerivative rsub(axis, data);
    const double L = cfg.length;
    const bool at_half = s == -0.5;
    const double prefactor = std::sin(pi * s) / pi;

    const auto& modes = spectrum.modes;
    std::vector<Integral> parts(modes.size());
    parallel_for(modes.size(), threads, [&](std::size_t i) {
        const double lam = modes[i].lambda;
        if (lam > 0.0) {
            auto f = [&](double u) {
                if (u <= 0.0) return 0.0;
                const double z = lam * std::cosh(u);
                const double r = rsub(z);
                if (r == 0.0) return 0.0;
                return std::exp((1.0 - 2.0 * s) * (std::log(lam) + log_sinh(u))) * r;
            };
            parts[i] = half_line(f, tol);
            return;
        }
        if (s >= 0.5) throw OutOfStrip("big_z with lambda = 0 modes needs s < 1/2");
        // Split at z = 1: unsubtracted below, subtracted above, and the
        // subtraction on (0, 1) continued analytically.
        auto below = finite([&](double z) { return std::pow(z, -2.0 * s) * (L + axis.d_log_z(z)); }, 0.0, 1.0, tol);
        auto above = one_to_inf([&](double z) { return std::pow(z, -2.0 * s) * rsub(z); }, tol);
        double cont = L / (1.0 - 2.0 * s);
        if (s != 0.0) cont += data.chi / (-2.0 * s);
        for (int n = 1; n <= order; ++n) {
            if (at_half && n == 1) continue;  // pole, carried as a residue
            cont -= n * data.omega[n - 1] / (-2.0 * s - n);
        }
        double v = below.value + above.value - cont;
        if (s == 0.0) v = 0.0;  // sin(pi s) kills everything but the chi term
        parts[i] = {v, below.error + above.error};
    });

    SubtractedZeta out;
    CompensatedSum value, err;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const double d = static_cast<double>(modes[i].degeneracy);
        value.add(d * prefactor * parts[i].value);
        err.add(d * std::abs(prefactor) * parts[i].error);
        if (modes[i].lambda == 0.0) {
            if (s == 0.0) value.add(d * data.chi / 2.0);
            if (at_half && order >= 1) out.residue += d * data.omega[0] / (2.0 * pi);
        }
    }
    out.value = value.value();
    out.quadrature_error = err.value();
    out.modes_used = static_cast<int>(modes.size());
    return out;
}

PoleAndFinite a_i_terms(const AsymptoticData& data, const ZetaNData& zn, double length) {
    const double ln2 = std::log(2.0);
    const double euler = boost::math::constants::euler<double>();
    auto half_point = [&](int i) {
        auto it = zn.half_points.find(i);
        if (it == zn.half_points.end())
            throw MissingZetaData("missing transverse zeta data at half-point index " + std::to_string(i), i);
        return it->second;
    };

    PoleAndFinite r;
    // A_{-1}: the zL term
    const double c_m1 = length / (4.0 * pi);
    r.pole += c_m1 * zn.zeta_minus1;
    r.finite += c_m1 * (zn.zeta_prime_minus1 + (2.0 * ln2 - 1.0) * zn.zeta_minus1);
    // A_0: the chi ln z term
    const auto [res0, fin0] = half_point(0);
    r.pole += 0.5 * data.chi * res0;
    r.finite += 0.5 * data.chi * fin0;
    if (data.order >= 1) {
        const double c1 = data.omega[0] / (2.0 * pi);
        r.pole += c1 * zn.zeta_0;
        r.finite += c1 * (zn.zeta_prime_0 + 2.0 * (ln2 - 1.0) * zn.zeta_0);
    }
    for (int i = 2; i <= data.order; ++i) {
        const auto [res, fin] = half_point(i);
        const double h = 0.5 * (i - 1);
        const double c = data.omega[i - 1] * std::tgamma(h) / (2.0 * std::sqrt(pi) * std::tgamma(0.5 * i));
        const double shift = boost::math::digamma(h) + euler + 2.0 * ln2 - 2.0;
        r.pole += c * res;
        r.finite += c * (fin + shift * res);
    }
    return r;
}

EnergyReport casimir_energy_report(const PistonConfig& cfg, const TransverseSpectrum& spectrum, const ZetaNData& zn,
                                   int order, int threads) {
    if (order < 0 && spectrum.dimension < 0)
        throw std::invalid_argument("energy report needs the transverse dimension or an explicit order");
    if (order < 0) order = spectrum.dimension + 1;
    const AsymptoticData data = asymptotic_data(cfg, order);
    bool transverse_trivial = spectrum.complete;
    for (const auto& m : spectrum.modes) transverse_trivial = transverse_trivial && m.lambda == 0.0;
    // Without positive transverse eigenvalues zeta_N vanishes identically.
    const auto ai = transverse_trivial ? PoleAndFinite{} : a_i_terms(data, zn, cfg.length);
    const auto z = big_z(-0.5, cfg, spectrum, order, 1e-11, threads);

    EnergyReport e;
    e.z_at_minus_half = z.value;
    e.pole_coefficient = 0.5 * (z.residue + ai.pole);
    e.finite_part = 0.5 * (z.value + ai.finite);
    auto& note = e.ambiguity_note;
    note.zeta_minus1 = zn.zeta_minus1 != 0.0;
    note.zeta_0 = zn.zeta_0 != 0.0;
    for (const auto& [i, rf] : zn.half_points)
        if (rf.first != 0.0) note.residue_indices.push_back(i);
    note.zero_mode_residue = z.residue != 0.0;
    return e;
}

}  // namespace casimir
