#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "casimir/boundary.hpp"
#include "casimir/errors.hpp"
#include "casimir/secular.hpp"

namespace testing_support {

using namespace casimir;
constexpr double pi = std::numbers::pi;

inline Vec3 random_axis(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vec3 v{g(rng), g(rng), g(rng)};
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {v[0] / n, v[1] / n, v[2] / n};
}

inline BoundaryUnitary random_unitary(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> phase(-pi, pi), mix(-pi / 2, pi / 2);
    return BoundaryUnitary::make(phase(rng), mix(rng), random_axis(rng));
}

inline BoundaryUnitary random_admissible_wall(std::mt19937_64& rng) {
    for (;;) {
        auto w = random_unitary(rng);
        if (classify_extension(w).kind == ExtensionClass::NoBoundStates) return w;
    }
}

// Wall without bound states and a secular function of one sign on the
// imaginary axis.
inline PistonConfig random_admissible_config(std::mt19937_64& rng, double length = 1.0) {
    std::uniform_real_distribution<double> pos(0.15, 0.85);
    for (;;) {
        PistonConfig c;
        c.outer = random_unitary(rng);
        c.wall = random_admissible_wall(rng);
        c.length = length;
        c.position = pos(rng) * length;
        try {
            ImaginaryAxis(c).require_definite_sign();
            return c;
        } catch (const PhysicsError&) {
        }
    }
}

inline PistonConfig dirichlet(double a, double length = 1.0) {
    PistonConfig c;
    c.outer = BoundaryUnitary::make(pi, 0.0, {0, 0, 1});
    c.wall = BoundaryUnitary::make(pi, 0.0, {0, 0, 1});
    c.length = length;
    c.position = a;
    return c;
}

// Sign changes of f on a uniform grid, refined by TOMS 748.
inline std::vector<double> grid_roots(const std::function<double(double)>& f, double lo, double hi, double step) {
    std::vector<double> roots;
    double x0 = lo, f0 = f(lo);
    const long n = static_cast<long>(std::ceil((hi - lo) / step));
    for (long i = 1; i <= n; ++i) {
        double x1 = lo + (hi - lo) * i / n, f1 = f(x1);
        if (f0 == 0.0) {
            roots.push_back(x0);
        } else if ((f0 < 0) != (f1 < 0) && f1 != 0.0) {
            boost::uintmax_t it = 200;
            auto r = boost::math::tools::toms748_solve(f, x0, x1, f0, f1,
                                                       boost::math::tools::eps_tolerance<double>(50), it);
            roots.push_back(0.5 * (r.first + r.second));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

}  // namespace testing_support
