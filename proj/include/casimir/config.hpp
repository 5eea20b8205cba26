#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "casimir/boundary.hpp"
#include "casimir/spectra.hpp"
#include "casimir/zeta_force.hpp"

namespace casimir {

// Raw user parameters, before the unit vectors are normalized. Scans vary
// one or two of these and rebuild the PistonConfig per grid point.
struct Parameters {
    double L = 1.0, a = 0.5;
    double alpha = 0.0, beta = 0.0;
    Vec3 n{0.0, 0.0, 1.0};
    double theta = 0.0, gamma = 0.0;
    Vec3 q{0.0, 0.0, 1.0};

    static const std::vector<std::string>& names();
    double get(const std::string& name) const;
    void set(const std::string& name, double value);  // ConfigError on unknown names
};

struct NormalizedPiston {
    PistonConfig config;
    double n_norm = 1.0;  // |(n1, n2, n3)| as given
    double q_norm = 1.0;
};

// Throws ConfigError (naming the key) for a nonpositive length, a position
// outside (0, L), or a zero unit vector that matters.
NormalizedPiston build_piston(const Parameters& p, bool diagnostic = false);

struct NumericsSpec {
    double tol = 1e-8;
    double lambda_max = 40.0;
    int threads = 0;
    std::string manifold = "point";  // point | sphere | disk | file
    int dimension = 2;               // sphere only
    std::string spectrum_file;
    bool diagnostic = false;
};

struct AxisSpec {
    std::string name;
    double lo = 0.0, hi = 0.0;
    int steps = 0;

    double value(int i) const { return steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1); }
};

struct OutputSpec {
    std::string path;
    std::string format = "csv";  // csv | json-lines
};

struct RunConfig {
    Parameters params;
    NumericsSpec numerics;
    std::optional<AxisSpec> axis1, axis2;
    OutputSpec output;
    std::optional<ZetaNData> zeta;
    int zeta_order = -1;  // subtraction order for the energy; < 0 means d + 1
};

// INI text with sections [geometry] [outer] [wall] [numerics] [scan]
// [output] and an optional [zeta]. Numbers may use pi, e.g. "3*pi/2".
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

// INI text that parses back to the same RunConfig (17 significant digits).
std::string to_ini(const RunConfig& cfg);

double parse_number(const std::string& text, const std::string& key);

TransverseSpectrum make_spectrum(const NumericsSpec& numerics);

}  // namespace casimir
