#pragma once

#include <complex>

namespace casimir {

// Principal log-gamma for complex argument (Lanczos, g = 7), accurate to
// about 1e-14 relative away from the poles.
std::complex<double> log_gamma(std::complex<double> z);

std::complex<double> beta_function(std::complex<double> x, std::complex<double> y);

}  // namespace casimir
