#include "casimir/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "casimir/bessel.hpp"
#include "casimir/errors.hpp"

namespace casimir {

std::int64_t TransverseSpectrum::count() const {
    std::int64_t c = 0;
    for (const auto& m : modes) c += m.degeneracy;
    return c;
}

namespace {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        r = r * static_cast<unsigned __int128>(n - i) / static_cast<unsigned __int128>(i + 1);
        if (r > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
            throw std::overflow_error("sphere degeneracy exceeds 64 bits");
    }
    return static_cast<std::int64_t>(r);
}

}  // namespace

std::int64_t sphere_degeneracy(int d, std::int64_t l) {
    // (2l+d-1)(l+d-2)!/(l!(d-1)!) = C(l+d, d) - C(l+d-2, d)
    return binomial(l + d, d) - binomial(l + d - 2, d);
}

TransverseSpectrum sphere_spectrum(int d, double lambda_max) {
    if (d < 1) throw std::invalid_argument("sphere dimension must be >= 1");
    TransverseSpectrum s;
    s.manifold_tag = "sphere";
    s.dimension = d;
    s.lambda_max = lambda_max;
    for (std::int64_t l = 0;; ++l) {
        double lam = std::sqrt(static_cast<double>(l) * static_cast<double>(l + d - 1));
        if (lam > lambda_max) break;
        s.modes.push_back({lam, sphere_degeneracy(d, l)});
    }
    return s;
}

TransverseSpectrum disk_spectrum(double lambda_max) {
    TransverseSpectrum s;
    s.manifold_tag = "disk";
    s.dimension = 2;
    s.lambda_max = lambda_max;
    std::vector<double> previous;
    for (int n = 0;; ++n) {
        auto zeros = bessel_zeros(n, lambda_max, previous);
        if (zeros.front() > lambda_max) break;
        for (double z : zeros)
            if (z <= lambda_max) s.modes.push_back({z, n == 0 ? 1 : 2});
        previous = std::move(zeros);
    }
    std::stable_sort(s.modes.begin(), s.modes.end(),
                     [](const TransverseMode& x, const TransverseMode& y) { return x.lambda < y.lambda; });
    return s;
}

TransverseSpectrum point_spectrum() {
    TransverseSpectrum s;
    s.manifold_tag = "point";
    s.dimension = 0;
    s.lambda_max = 0.0;
    s.complete = true;
    s.modes.push_back({0.0, 1});
    return s;
}

TransverseSpectrum load_spectrum(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open spectrum file " + path, 0);
    TransverseSpectrum s;
    s.manifold_tag = "file:" + path;
    s.dimension = -1;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            std::istringstream meta(line.substr(hash + 1));
            std::string key;
            int d;
            if (meta >> key && key == "dimension" && meta >> d) s.dimension = d;
            line.erase(hash);
        }
        std::istringstream row(line);
        double lam;
        if (!(row >> lam)) {
            std::string rest;
            if (std::istringstream(line) >> rest)
                throw ParseError("line " + std::to_string(line_no) + ": expected 'lambda degeneracy'", line_no);
            continue;
        }
        std::int64_t deg;
        std::string extra;
        if (!(row >> deg) || (row >> extra))
            throw ParseError("line " + std::to_string(line_no) + ": expected 'lambda degeneracy'", line_no);
        if (!(lam >= 0.0) || !std::isfinite(lam))
            throw ParseError("line " + std::to_string(line_no) + ": lambda must be finite and >= 0", line_no);
        if (deg < 1) throw ParseError("line " + std::to_string(line_no) + ": degeneracy must be >= 1", line_no);
        if (!s.modes.empty() && lam < s.modes.back().lambda)
            throw OrderingError("line " + std::to_string(line_no) + ": lambda values must be nondecreasing", line_no);
        s.modes.push_back({lam, deg});
    }
    if (s.modes.empty()) throw ParseError("spectrum file " + path + " has no modes", line_no);
    s.lambda_max = s.modes.back().lambda;
    s.complete = s.dimension < 0;
    return s;
}

void save_spectrum(const TransverseSpectrum& spectrum, const std::string& path) {
    std::ofstream out(path);
    if (spectrum.dimension >= 0 && !spectrum.complete) out << "# dimension " << spectrum.dimension << "\n";
    out.precision(17);
    for (const auto& m : spectrum.modes) out << m.lambda << " " << m.degeneracy << "\n";
}

}  // namespace casimir
