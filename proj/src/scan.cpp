#include "casimir/scan.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "json.hpp"

#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"

namespace casimir {

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ScanCell evaluate_cell(Parameters params, const NumericsSpec& numerics, const TransverseSpectrum& spectrum) {
    ScanCell cell;
    try {
        auto built = build_piston(params, numerics.diagnostic);
        cell.n_norm = built.n_norm;
        cell.q_norm = built.q_norm;
        ForceOptions opts;
        opts.tol = numerics.tol;
        opts.threads = 1;
        auto r = casimir_force(built.config, spectrum, opts);
        cell.force = r.force;
        cell.quadrature_error = r.quadrature_error;
        cell.tail_bound = r.tail_bound;
    } catch (const ToleranceNotMet& e) {
        cell.status = CellStatus::ToleranceNotMet;
        cell.message = e.what();
        cell.force = e.best.force;
        cell.quadrature_error = e.best.quadrature_error;
        cell.tail_bound = e.best.tail_bound;
    } catch (const PhysicsError& e) {
        cell.status = CellStatus::Inadmissible;
        cell.message = e.what();
    } catch (const std::exception& e) {
        cell.status = CellStatus::Failed;
        cell.message = e.what();
    }
    if (cell.status == CellStatus::Inadmissible || cell.status == CellStatus::Failed) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        cell.force = cell.quadrature_error = cell.tail_bound = nan;
    }
    return cell;
}

}  // namespace

const char* to_string(CellStatus s) {
    switch (s) {
        case CellStatus::Ok: return "ok";
        case CellStatus::Inadmissible: return "inadmissible";
        case CellStatus::ToleranceNotMet: return "tolerance_not_met";
        case CellStatus::Failed: return "failed";
    }
    return "unknown";
}

ScanGrid run_scan(const RunConfig& cfg, const std::function<void(std::size_t, std::size_t)>& progress) {
    if (!cfg.axis1) throw ConfigError("scan.axis1_name: a scan needs at least one axis");
    ScanGrid grid;
    grid.axis1_name = cfg.axis1->name;
    for (int i = 0; i < cfg.axis1->steps; ++i) grid.axis1.push_back(cfg.axis1->value(i));
    if (cfg.axis2) {
        grid.axis2_name = cfg.axis2->name;
        for (int j = 0; j < cfg.axis2->steps; ++j) grid.axis2.push_back(cfg.axis2->value(j));
    } else {
        grid.axis2.push_back(0.0);
    }
    const TransverseSpectrum spectrum = make_spectrum(cfg.numerics);
    const std::size_t cols = grid.axis2.size(), total = grid.axis1.size() * cols;
    grid.cells.resize(total);
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    parallel_for(total, cfg.numerics.threads, [&](std::size_t k) {
        const std::size_t i = k / cols, j = k % cols;
        Parameters p = cfg.params;
        p.set(grid.axis1_name, grid.axis1[i]);
        if (cfg.axis2) p.set(grid.axis2_name, grid.axis2[j]);
        ScanCell cell = evaluate_cell(p, cfg.numerics, spectrum);
        cell.axis1 = grid.axis1[i];
        cell.axis2 = grid.axis2[j];
        grid.cells[k] = std::move(cell);
        if (progress) {
            std::lock_guard<std::mutex> lock(progress_mutex);
            progress(++done, total);
        }
    });
    return grid;
}

void write_csv(const ScanGrid& grid, std::ostream& out) {
    out << "axis1,axis2,force,quad_err,tail_bound,admissible\n";
    for (const auto& c : grid.cells) {
        out << format_double(c.axis1) << ',' << format_double(c.axis2) << ',' << format_double(c.force) << ','
            << format_double(c.quadrature_error) << ',' << format_double(c.tail_bound) << ','
            << (c.admissible() ? 1 : 0) << '\n';
    }
}

void write_json_lines(const ScanGrid& grid, std::ostream& out) {
    for (const auto& c : grid.cells) {
        nlohmann::ordered_json row;
        row["axis1"] = c.axis1;
        row["axis2"] = c.axis2;
        row["force"] = std::isnan(c.force) ? nlohmann::ordered_json() : nlohmann::ordered_json(c.force);
        row["quad_err"] =
            std::isnan(c.quadrature_error) ? nlohmann::ordered_json() : nlohmann::ordered_json(c.quadrature_error);
        row["tail_bound"] = std::isnan(c.tail_bound) ? nlohmann::ordered_json() : nlohmann::ordered_json(c.tail_bound);
        row["admissible"] = c.admissible();
        row["status"] = to_string(c.status);
        if (!c.message.empty()) row["error"] = c.message;
        if (c.n_norm != 1.0) row["n_norm"] = c.n_norm;
        if (c.q_norm != 1.0) row["q_norm"] = c.q_norm;
        out << row.dump() << '\n';
    }
}

ScanGrid read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "axis1,axis2,force,quad_err,tail_bound,admissible")
        throw ParseError("grid file: expected the header axis1,axis2,force,quad_err,tail_bound,admissible", 1);
    ScanGrid grid;
    std::map<double, std::size_t> seen1, seen2;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 6) throw ParseError("grid file line " + std::to_string(line_no) + ": expected 6 fields", line_no);
        ScanCell c;
        try {
            c.axis1 = std::stod(fields[0]);
            c.axis2 = std::stod(fields[1]);
            c.force = std::stod(fields[2]);
            c.quadrature_error = std::stod(fields[3]);
            c.tail_bound = std::stod(fields[4]);
        } catch (const std::exception&) {
            throw ParseError("grid file line " + std::to_string(line_no) + ": bad number", line_no);
        }
        c.status = fields[5] == "1" ? CellStatus::Ok : CellStatus::Inadmissible;
        if (seen1.emplace(c.axis1, grid.axis1.size()).second) grid.axis1.push_back(c.axis1);
        if (seen2.emplace(c.axis2, grid.axis2.size()).second) grid.axis2.push_back(c.axis2);
        grid.cells.push_back(c);
    }
    if (grid.cells.size() != grid.axis1.size() * grid.axis2.size())
        throw ParseError("grid file: rows do not form a full rectangular grid", line_no);
    for (std::size_t k = 0; k < grid.cells.size(); ++k) {
        const auto& c = grid.cells[k];
        if (c.axis1 != grid.axis1[k / grid.axis2.size()] || c.axis2 != grid.axis2[k % grid.axis2.size()])
            throw OrderingError("grid file: rows are not in axis1-major order", static_cast<int>(k) + 2);
    }
    grid.axis1_name = "axis1";
    grid.axis2_name = "axis2";
    return grid;
}

ContourSet zero_force_curves(const ScanGrid& grid) {
    ContourSet out;
    const std::size_t n1 = grid.axis1.size(), n2 = grid.axis2.size();

    bool any_admissible = false, all_zero = true;
    for (const auto& c : grid.cells) {
        if (!c.admissible()) continue;
        any_admissible = true;
        // Zero within its own error bars counts as zero.
        if (std::abs(c.force) > c.quadrature_error + c.tail_bound) all_zero = false;
    }
    if (any_admissible && all_zero) {
        out.identically_zero = true;
        return out;
    }
    if (n1 < 2 || n2 < 2) return out;

    // Crossing points live on grid edges. An edge is keyed by its lower
    // corner and direction (0: along axis1, 1: along axis2), so neighbouring
    // cells share the point exactly.
    struct EdgeKey {
        std::size_t i, j;
        int dir;
        bool operator<(const EdgeKey& o) const { return std::tie(i, j, dir) < std::tie(o.i, o.j, o.dir); }
        bool operator==(const EdgeKey& o) const { return i == o.i && j == o.j && dir == o.dir; }
    };
    auto value = [&](std::size_t i, std::size_t j) { return grid.at(i, j).force; };
    auto point = [&](const EdgeKey& e) -> std::array<double, 2> {
        const std::size_t i1 = e.i + (e.dir == 0), j1 = e.j + (e.dir == 1);
        const double f0 = value(e.i, e.j), f1 = value(i1, j1);
        const double t = f0 / (f0 - f1);
        return {grid.axis1[e.i] + t * (grid.axis1[i1] - grid.axis1[e.i]),
                grid.axis2[e.j] + t * (grid.axis2[j1] - grid.axis2[e.j])};
    };

    std::vector<std::pair<EdgeKey, EdgeKey>> segments;
    for (std::size_t i = 0; i + 1 < n1; ++i) {
        for (std::size_t j = 0; j + 1 < n2; ++j) {
            if (!grid.at(i, j).admissible() || !grid.at(i + 1, j).admissible() || !grid.at(i, j + 1).admissible() ||
                !grid.at(i + 1, j + 1).admissible())
                continue;
            // Corners counterclockwise: (i,j) (i+1,j) (i+1,j+1) (i,j+1);
            // edges between consecutive corners.
            const double f[4] = {value(i, j), value(i + 1, j), value(i + 1, j + 1), value(i, j + 1)};
            const EdgeKey edges[4] = {{i, j, 0}, {i + 1, j, 1}, {i, j + 1, 0}, {i, j, 1}};
            bool pos[4];
            for (int c = 0; c < 4; ++c) pos[c] = f[c] >= 0.0;
            std::vector<int> crossed;
            for (int e = 0; e < 4; ++e)
                if (pos[e] != pos[(e + 1) % 4]) crossed.push_back(e);
            if (crossed.size() == 2) {
                segments.push_back({edges[crossed[0]], edges[crossed[1]]});
            } else if (crossed.size() == 4) {
                // Saddle: diagonal corners 0 and 2 share a sign. If the
                // centre agrees with them they are connected and the
                // segments cut off corners 1 and 3.
                const bool centre = (f[0] + f[1] + f[2] + f[3]) / 4.0 >= 0.0;
                if (centre == pos[0]) {
                    segments.push_back({edges[0], edges[1]});
                    segments.push_back({edges[2], edges[3]});
                } else {
                    segments.push_back({edges[3], edges[0]});
                    segments.push_back({edges[1], edges[2]});
                }
            }
        }
    }

    // Stitch segments into polylines through their shared edges.
    std::map<EdgeKey, std::vector<std::size_t>> touching;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        touching[segments[s].first].push_back(s);
        touching[segments[s].second].push_back(s);
    }
    std::vector<bool> used(segments.size(), false);
    auto walk = [&](std::size_t start, const EdgeKey& from) {
        std::vector<EdgeKey> chain{from};
        std::size_t s = start;
        EdgeKey at = from;
        for (;;) {
            used[s] = true;
            at = segments[s].first == at ? segments[s].second : segments[s].first;
            chain.push_back(at);
            std::size_t next = segments.size();
            for (std::size_t t : touching[at])
                if (!used[t]) next = t;
            if (next == segments.size()) break;
            s = next;
        }
        Polyline line;
        for (const auto& e : chain) {
            auto p = point(e);
            if (line.empty() || line.back() != p) line.push_back(p);
        }
        if (line.size() >= 2) out.curves.push_back(std::move(line));
    };
    // Open chains first (they start at an edge used once), then loops.
    for (const auto& [edge, segs] : touching)
        if (segs.size() == 1 && !used[segs[0]]) walk(segs[0], edge);
    for (std::size_t s = 0; s < segments.size(); ++s)
        if (!used[s]) walk(s, segments[s].first);
    return out;
}

}  // namespace casimir
