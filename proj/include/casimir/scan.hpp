#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "casimir/config.hpp"

namespace casimir {

enum class CellStatus { Ok, Inadmissible, ToleranceNotMet, Failed };

const char* to_string(CellStatus s);

struct ScanCell {
    double axis1 = 0.0, axis2 = 0.0;
    double force = 0.0;
    double quadrature_error = 0.0;
    double tail_bound = 0.0;
    CellStatus status = CellStatus::Ok;
    std::string message;  // empty when Ok
    double n_norm = 1.0, q_norm = 1.0;

    bool admissible() const { return status == CellStatus::Ok || status == CellStatus::ToleranceNotMet; }
};

struct ScanGrid {
    std::string axis1_name, axis2_name;
    std::vector<double> axis1, axis2;
    std::vector<ScanCell> cells;  // axis1-major: cells[i * axis2.size() + j]

    const ScanCell& at(std::size_t i, std::size_t j) const { return cells[i * axis2.size() + j]; }
};

// Evaluates the force on the grid spanned by cfg.axis1 x cfg.axis2 (a
// missing axis2 gives a single column). Cells run in parallel, each force
// single-threaded, so results do not depend on the thread count.
ScanGrid run_scan(const RunConfig& cfg, const std::function<void(std::size_t done, std::size_t total)>& progress = {});

void write_csv(const ScanGrid& grid, std::ostream& out);
void write_json_lines(const ScanGrid& grid, std::ostream& out);

// Reads back the grid written by write_csv; axis values come from the
// distinct first/second columns in order of appearance.
ScanGrid read_csv(std::istream& in);

using Polyline = std::vector<std::array<double, 2>>;

struct ContourSet {
    std::vector<Polyline> curves;
    bool identically_zero = false;  // every admissible |force| <= its error bound
};

// Force = 0 level set by marching squares over cells whose four corners
// are admissible. Zero counts as positive; saddles are resolved by the
// mean of the four corners.
ContourSet zero_force_curves(const ScanGrid& grid);

}  // namespace casimir
