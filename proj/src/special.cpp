#include "casimir/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace casimir {

std::complex<double> log_gamma(std::complex<double> z) {
    using C = std::complex<double>;
    constexpr double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
    }
    static constexpr std::array<double, 9> c = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1.0;
    C x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
    const C t = z + 7.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

std::complex<double> beta_function(std::complex<double> x, std::complex<double> y) {
    return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

}  // namespace casimir
