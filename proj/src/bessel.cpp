#include "casimir/bessel.hpp"

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"

namespace casimir {

BesselPair bessel_j_pair(int n, double x) {
    if (x == 0.0) return {n == 0 ? 1.0 : 0.0, n == 1 ? 1.0 : 0.0};
    const int order = n == 0 ? 1 : n;  // J_{-1} = -J_1
    const double big = std::max<double>(order, x);
    int start = static_cast<int>(big + 30.0 + 4.0 * std::cbrt(big) + std::sqrt(60.0 * big));
    start += start % 2;

    double above = 0.0, here = 1e-300, norm = 0.0;
    double j_n = 0.0, j_prev = 0.0;
    const double rescale = 1e250;
    for (int k = start; k >= 1; --k) {
        double below = 2.0 * k / x * here - above;  // J_{k-1}
        above = here;
        here = below;
        if (k - 1 == order) j_n = here;
        if (k - 1 == order - 1) j_prev = here;
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * here;
        if (std::abs(here) > rescale) {
            here /= rescale;
            above /= rescale;
            norm /= rescale;
            j_n /= rescale;
            j_prev /= rescale;
        }
    }
    norm += here;  // J_0
    j_n /= norm;
    j_prev /= norm;
    if (n == 0) return {j_prev, -j_n};
    return {j_n, j_prev};
}

double bessel_j(int n, double x) { return bessel_j_pair(n, x).value; }

double mcmahon_zero(int n, int s) {
    const double mu = 4.0 * n * n;
    const double b = (s + 0.5 * n - 0.25) * std::numbers::pi;
    const double e = 8.0 * b;
    return b - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
}

namespace {

// Safeguarded Newton on J_n inside a sign-change bracket.
double polish(int n, double lo, double hi, double guess) {
    double flo = bessel_j(n, lo);
    double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        auto p = bessel_j_pair(n, x);
        const double f = p.value;
        if (f == 0.0) return x;
        if ((f < 0) == (flo < 0)) {
            lo = x;
            flo = f;
        } else {
            hi = x;
        }
        const double df = p.previous - n / x * f;
        double next = x - f / df;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 * x || hi - lo <= 4e-16 * x) {
            return next;
        }
        x = next;
    }
    throw ConvergenceFailure("Bessel zero refinement did not converge");
}

double find_bracketed(int n, double lo, double hi, int s) {
    return polish(n, lo, hi, mcmahon_zero(n, s));
}

}  // namespace

std::vector<double> bessel_zeros(int n, double limit, const std::vector<double>& previous_order) {
    std::vector<double> zeros;
    const double pi = std::numbers::pi;
    if (n == 0) {
        // j_{0,s} lies in ((s - 1/2) pi, s pi).
        for (int s = 1;; ++s) {
            double z = find_bracketed(0, (s - 0.5) * pi, s * pi, s);
            zeros.push_back(z);
            if (z > limit) break;
        }
        return zeros;
    }
    // One zero of J_n between consecutive zeros of J_{n-1}, the first one
    // above j_{n-1,1}.
    for (std::size_t s = 0; s + 1 < previous_order.size(); ++s) {
        double z = find_bracketed(n, previous_order[s], previous_order[s + 1], static_cast<int>(s) + 1);
        zeros.push_back(z);
        if (z > limit) return zeros;
    }
    // Spacing of consecutive zeros never drops below pi, so a forward scan
    // with a smaller step cannot skip one.
    double lo = zeros.empty() ? previous_order.back() : zeros.back() + 0.5 * pi;
    double flo = bessel_j(n, lo);
    for (int s = static_cast<int>(zeros.size()) + 1;;) {
        double hi = lo + 0.5;
        double fhi = bessel_j(n, hi);
        if ((flo < 0) != (fhi < 0)) {
            double z = find_bracketed(n, lo, hi, s);
            zeros.push_back(z);
            ++s;
            if (z > limit) break;
            lo = z + 0.5 * pi;
            flo = bessel_j(n, lo);
        } else {
            lo = hi;
            flo = fhi;
        }
    }
    return zeros;
}

}  // namespace casimir
