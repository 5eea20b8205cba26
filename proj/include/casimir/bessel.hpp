#pragma once

#include <vector>

namespace casimir {

// J_n(x) and J_{n-1}(x) (J_{-1} = -J_1) for x >= 0 from one Miller
// downward recurrence normalized by J_0 + 2 sum J_{2k} = 1.
struct BesselPair {
    double value;     // J_n(x)
    double previous;  // J_{n-1}(x)
};
BesselPair bessel_j_pair(int n, double x);

double bessel_j(int n, double x);

// Positive zeros of J_n up to (and including the first one beyond) limit.
// Brackets come from interlacing with the zeros of J_{n-1}; pass those in
// for n >= 1.
std::vector<double> bessel_zeros(int n, double limit, const std::vector<double>& previous_order);

double mcmahon_zero(int n, int s);

}  // namespace casimir
