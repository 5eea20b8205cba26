#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/secular.hpp"
#include "casimir/zeta_force.hpp"

namespace casimir {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Integral over w in [0, inf) of d_a ln h(i sqrt(w^2 + lambda^2)), with
// w = -ln(u)/m so that the e^{-2 m w} decay becomes polynomial in u.
QuadratureResult mode_integral(const ImaginaryAxis& axis, double lambda, double m, double abs_tol) {
    auto integrand = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double w = -std::log(u) / m;
        const double z = std::hypot(w, lambda);
        return axis.d_position(z) / (m * u);
    };
    return integrate_adaptive(integrand, 0.0, 1.0, abs_tol, 4000);
}

// Cheap magnitude guess for mode_integral, used only to plan the truncation.
double mode_estimate(const ImaginaryAxis& axis, double lambda, double m) {
    const double z = std::max(lambda, 1e-3);
    return std::abs(axis.d_position(z)) * (std::sqrt(std::numbers::pi * z / (4.0 * m)) + 1.0 / (2.0 * m));
}

// Per-mode envelope: |integral(lambda)| <= c (lambda/ref)^2 e^{-2 m (lambda - anchor)}.
double envelope(double c, double ref, double anchor, double m, double lambda) {
    return c * (lambda / ref) * (lambda / ref) * std::exp(-2.0 * m * (lambda - anchor));
}

// Integral of the envelope against a Weyl density A lambda^{d-1} over
// (cutoff, inf). Uses Gamma(n, x) = (n-1)! e^{-x} sum_{k<n} x^k/k! for the
// integer order n = d + 2.
double weyl_tail(double weyl_a, int d, double c, double ref, double anchor, double m, double cutoff) {
    const int n = d + 2;
    const double rate = 2.0 * m, x = rate * cutoff;
    double term = 1.0, series = 1.0;
    for (int k = 1; k < n; ++k) {
        term *= x / k;
        series += term;
    }
    double factorial = 1.0;
    for (int k = 2; k < n; ++k) factorial *= k;
    const double upper_gamma = factorial * std::exp(-x + rate * anchor) * series;
    return weyl_a * c / (ref * ref) * upper_gamma / std::pow(rate, n);
}

}  // namespace

ForceResult casimir_force(const PistonConfig& cfg, const TransverseSpectrum& spectrum, const ForceOptions& opts) {
    cfg.validate();
    const ImaginaryAxis axis(cfg);
    axis.require_definite_sign();

    const auto& modes = spectrum.modes;
    const double m = std::min(cfg.position, cfg.length - cfg.position);
    const double tol = opts.tol;
    const bool open_ended = !spectrum.complete && spectrum.dimension >= 1 && spectrum.lambda_max > 0.0;
    const double weyl_a = open_ended ? spectrum.dimension * static_cast<double>(spectrum.count()) /
                                           std::pow(spectrum.lambda_max, spectrum.dimension)
                                     : 0.0;

    // Plan with the cheap estimates: `keep` modes leave an estimated remainder
    // below tol/4; the quadrature budget is sized for the longer prefix that
    // leaves tol/1000, so extending `keep` later stays within budget.
    std::vector<double> est(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i)
        est[i] = modes[i].degeneracy * mode_estimate(axis, modes[i].lambda, m) / two_pi;
    auto prefix_for = [&](double target) {
        double suffix = 0.0;
        if (open_ended && !modes.empty()) {
            const auto& last = modes.back();
            const double ref = std::max(last.lambda, 1.0);
            const double c = 10.0 * est.back() / last.degeneracy * two_pi;
            suffix = weyl_tail(weyl_a, spectrum.dimension, c, ref, last.lambda, m, spectrum.lambda_max) / two_pi;
            if (!std::isfinite(suffix)) suffix = std::numeric_limits<double>::infinity();
        }
        std::size_t k = modes.size();
        while (k > 1 && suffix + est[k - 1] < target) {
            suffix += est[k - 1];
            --k;
        }
        return k;
    };
    std::size_t keep = prefix_for(0.25 * tol);
    const std::size_t budget_modes = prefix_for(1e-3 * tol);
    double weight_total = 0.0;
    for (std::size_t i = 0; i < budget_modes; ++i) weight_total += static_cast<double>(modes[i].degeneracy);
    const double quad_budget = 0.5 * tol * two_pi / std::max(weight_total, 1.0);

    std::vector<QuadratureResult> parts;
    ForceResult r;
    for (;;) {
        const std::size_t done = parts.size();
        parts.resize(keep);
        parallel_for(keep - done, opts.threads, [&](std::size_t j) {
            const std::size_t i = done + j;
            parts[i] = mode_integral(axis, modes[i].lambda, m, quad_budget);
        });

        r.tail_bound = 0.0;
        // Envelope anchored at the last kept mode, inflated tenfold.
        if (keep < modes.size() || open_ended) {
            const auto& last = modes[keep - 1];
            const double ref = std::max(last.lambda, 1.0);
            // Fit the constant over the last few kept modes, so one accidental
            // near-zero integral cannot shrink the bound.
            double c = 0.0;
            for (std::size_t i = keep - std::min<std::size_t>(keep, 4); i < keep; ++i) {
                const double shape = envelope(1.0, ref, last.lambda, m, std::max(modes[i].lambda, 1e-300));
                if (shape > 0.0) c = std::max(c, 10.0 * std::abs(parts[i].value) / shape);
            }
            if (!std::isfinite(c)) c = std::numeric_limits<double>::infinity();
            CompensatedSum tail;
            for (std::size_t i = keep; i < modes.size(); ++i)
                tail.add(modes[i].degeneracy * envelope(c, ref, last.lambda, m, modes[i].lambda) / two_pi);
            if (open_ended)
                tail.add(weyl_tail(weyl_a, spectrum.dimension, c, ref, last.lambda, m, spectrum.lambda_max) / two_pi);
            r.tail_bound = tail.value();
            if (!std::isfinite(r.tail_bound)) r.tail_bound = std::numeric_limits<double>::infinity();
        }
        if (r.tail_bound <= 0.5 * tol || keep == modes.size()) break;
        keep = std::min(modes.size(), keep + std::max<std::size_t>(8, keep / 4));
    }

    r.modes_used = static_cast<int>(keep);
    CompensatedSum force, error;
    for (std::size_t i = 0; i < keep; ++i) {
        const double d = static_cast<double>(modes[i].degeneracy);
        const double contrib = -d * parts[i].value / two_pi;
        force.add(contrib);
        error.add(d * parts[i].error / two_pi);
        if (opts.keep_per_mode) r.per_mode.push_back(contrib);
        if (modes[i].lambda == 0.0) r.zero_modes_included = true;
    }
    r.force = force.value();
    r.quadrature_error = error.value();

    if (!(r.quadrature_error + r.tail_bound <= tol)) {
        std::ostringstream msg;
        msg.precision(3);
        msg << "tolerance not met: quadrature error " << r.quadrature_error << " + tail bound " << r.tail_bound
            << " > " << tol;
        throw ToleranceNotMet(msg.str(), r);
    }
    return r;
}

std::vector<Equilibrium> classify_equilibria(const std::vector<std::pair<double, double>>& profile,
                                             const std::function<double(double)>& force, double tol) {
    std::vector<Equilibrium> out;
    for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
        auto [a0, f0] = profile[i];
        auto [a1, f1] = profile[i + 1];
        const bool p0 = f0 >= 0.0, p1 = f1 >= 0.0;
        if (p0 == p1) continue;
        double root;
        if (force) {
            double lo = a0, hi = a1;
            while (hi - lo > tol) {
                double mid = 0.5 * (lo + hi);
                if ((force(mid) >= 0.0) == p0)
                    lo = mid;
                else
                    hi = mid;
            }
            root = 0.5 * (lo + hi);
        } else {
            root = a0 + (a1 - a0) * f0 / (f0 - f1);
        }
        // Pushed back toward the crossing from both sides: restoring.
        out.push_back({root, p0 ? Stability::Stable : Stability::Unstable});
    }
    return out;
}

const char* to_string(Stability s) { return s == Stability::Stable ? "stable" : "unstable"; }

}  // namespace casimir
