#include "casimir/quadrature.hpp"

#include <cmath>
#include <algorithm>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace casimir {

namespace {

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& x = kronrod::abscissa();  // 0, then increasing
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();    // Gauss nodes are x[0], x[2], x[4], x[6]
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);

    double f0 = f(mid);
    double k = f0 * wk[0], g = f0 * wg[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        double fs = f(mid - half * x[i]) + f(mid + half * x[i]);
        k += fs * wk[i];
        if (i % 2 == 0) g += fs * wg[i / 2];
    }
    return {lo, hi, k * half, std::abs((k - g) * half)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi, double abs_tol,
                                    int max_intervals) {
    std::priority_queue<Panel> heap;
    heap.push(gk15(f, lo, hi));
    QuadratureResult r;
    r.evaluations = 15;
    double total_err = heap.top().error;
    int panels = 1;
    while (total_err > abs_tol && panels < max_intervals) {
        Panel worst = heap.top();
        // Below rounding level: splitting further only burns evaluations.
        if (worst.hi - worst.lo <= 1e-12 * std::max(1.0, std::abs(worst.lo))) break;
        heap.pop();
        double mid = 0.5 * (worst.lo + worst.hi);
        Panel left = gk15(f, worst.lo, mid), right = gk15(f, mid, worst.hi);
        r.evaluations += 30;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    // Re-sum from scratch in interval order so the total does not depend on
    // the order of refinements.
    std::vector<Panel> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    CompensatedSum value, error;
    for (const auto& p : all) {
        value.add(p.value);
        error.add(p.error);
    }
    r.value = value.value();
    r.error = error.value();
    r.converged = r.error <= abs_tol;
    return r;
}

void CompensatedSum::add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

}  // namespace casimir
