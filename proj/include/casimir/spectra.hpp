#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace casimir {

struct TransverseMode {
    double lambda;
    std::int64_t degeneracy;
};

struct TransverseSpectrum {
    std::vector<TransverseMode> modes;  // nondecreasing lambda
    std::string manifold_tag;
    int dimension = 0;  // -1 when unknown
    double lambda_max = 0.0;
    // True when modes is the whole spectrum (point manifold, or a file that
    // does not declare a dimension). Otherwise eigenvalues above lambda_max
    // exist and are only known through Weyl's law.
    bool complete = false;

    std::int64_t count() const;  // with multiplicity
};

std::int64_t sphere_degeneracy(int d, std::int64_t l);

TransverseSpectrum sphere_spectrum(int d, double lambda_max);
TransverseSpectrum disk_spectrum(double lambda_max);
TransverseSpectrum point_spectrum();

// "lambda degeneracy" per line, '#' comments. A "# dimension <d>" comment
// marks the list as a truncation of a d-dimensional spectrum.
TransverseSpectrum load_spectrum(const std::string& path);
void save_spectrum(const TransverseSpectrum& spectrum, const std::string& path);

}  // namespace casimir
