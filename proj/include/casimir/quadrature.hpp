#pragma once

#include <functional>

namespace casimir {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Globally adaptive Gauss-Kronrod (7, 15) on [lo, hi] with an absolute error
// target. Always splits the interval with the largest error estimate, so the
// result is a deterministic function of (f, lo, hi, abs_tol, max_intervals).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi, double abs_tol,
                                    int max_intervals = 2000);

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace casimir
