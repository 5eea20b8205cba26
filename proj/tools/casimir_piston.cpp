// Command-line front end: single-point force/energy reports, parameter
// scans and zero-force contour extraction.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "casimir/config.hpp"
#include "casimir/errors.hpp"
#include "casimir/scan.hpp"
#include "casimir/version.hpp"
#include "casimir/zeta_force.hpp"

using namespace casimir;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kConfig = 2, kPhysics = 3, kTolerance = 4 };

struct Overrides {
    std::optional<double> tol, lambda_max;
    std::optional<int> threads;
    std::string out;

    void apply(RunConfig& cfg) const {
        if (tol) cfg.numerics.tol = *tol;
        if (lambda_max) cfg.numerics.lambda_max = *lambda_max;
        if (threads) cfg.numerics.threads = *threads;
        if (!out.empty()) cfg.output.path = out;
        if (!(cfg.numerics.tol > 0.0)) throw ConfigError("--tol: must be positive");
        if (!(cfg.numerics.lambda_max > 0.0)) throw ConfigError("--lambda-max: must be positive");
        if (cfg.numerics.threads < 0) throw ConfigError("--threads: must be >= 0");
    }
};

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

json spectrum_summary(const TransverseSpectrum& s) {
    return {{"manifold", s.manifold_tag},
            {"dimension", s.dimension},
            {"lambda_max", s.lambda_max},
            {"modes", s.modes.size()},
            {"eigenvalues_with_multiplicity", s.count()},
            {"complete", s.complete}};
}

json force_json(const ForceResult& r, const char* status) {
    return {{"status", status},
            {"force", r.force},
            {"quadrature_error", r.quadrature_error},
            {"tail_bound", r.tail_bound},
            {"modes_used", r.modes_used},
            {"zero_modes_included", r.zero_modes_included}};
}

int run_single(const std::string& path, const Overrides& overrides) {
    RunConfig cfg = load_config(path);
    overrides.apply(cfg);
    const auto built = build_piston(cfg.params, cfg.numerics.diagnostic);
    const auto spectrum = make_spectrum(cfg.numerics);

    json report;
    report["version"] = kVersion;
    report["input"] = {{"config", to_ini(cfg)},
                       {"unit_vector_norms", {{"n", built.n_norm}, {"q", built.q_norm}}},
                       {"spectrum", spectrum_summary(spectrum)}};
    const auto wall = classify_extension(built.config.wall);
    report["wall"] = {{"classification", to_string(wall.kind)}, {"zero_mode", wall.zero_mode}};

    ForceOptions opts;
    opts.tol = cfg.numerics.tol;
    opts.threads = cfg.numerics.threads;
    int code = kOk;
    try {
        report["force"] = force_json(casimir_force(built.config, spectrum, opts), "ok");
    } catch (const ToleranceNotMet& e) {
        report["force"] = force_json(e.best, "tolerance_not_met");
        report["force"]["error"] = e.what();
        code = kTolerance;
    }

    if (cfg.zeta) {
        auto e = casimir_energy_report(built.config, spectrum, *cfg.zeta, cfg.zeta_order, cfg.numerics.threads);
        const auto& note = e.ambiguity_note;
        report["energy"] = {
            {"pole_coefficient", e.pole_coefficient},
            {"finite_part", e.finite_part},
            {"z_at_minus_half", e.z_at_minus_half},
            {"ambiguity",
             {{"any", note.any()},
              {"zeta_minus1", note.zeta_minus1},
              {"zeta_0", note.zeta_0},
              {"residue_indices", note.residue_indices},
              {"zero_mode_residue", note.zero_mode_residue}}}};
    }
    emit(cfg.output.path, report.dump(2) + "\n");
    return code;
}

int run_scan_command(const std::string& path, const Overrides& overrides) {
    RunConfig cfg = load_config(path);
    overrides.apply(cfg);
    if (!cfg.axis1) throw ConfigError("scan.axis1_name: missing scan axes");
    auto grid = run_scan(cfg, [](std::size_t done, std::size_t total) {
        if (done == total || done % 64 == 0) std::cerr << "\rscan " << done << "/" << total << std::flush;
    });
    std::cerr << "\n";

    std::ostringstream table;
    if (cfg.output.format == "csv")
        write_csv(grid, table);
    else
        write_json_lines(grid, table);
    emit(cfg.output.path, table.str());

    json summary;
    summary["version"] = kVersion;
    summary["cells"] = grid.cells.size();
    std::size_t admissible = 0, short_of_tol = 0, failed = 0;
    double worst = 0.0;
    json errors = json::array();
    for (const auto& c : grid.cells) {
        if (c.admissible()) {
            ++admissible;
            worst = std::max(worst, c.quadrature_error + c.tail_bound);
        }
        if (c.status == CellStatus::ToleranceNotMet) ++short_of_tol;
        if (c.status == CellStatus::Failed) ++failed;
        if (c.status == CellStatus::ToleranceNotMet || c.status == CellStatus::Failed)
            errors.push_back({{"axis1", c.axis1}, {"axis2", c.axis2}, {"status", to_string(c.status)}, {"error", c.message}});
    }
    summary["admissible"] = admissible;
    summary["max_error_bound"] = worst;
    summary["errors"] = errors;
    if (cfg.axis2) {
        auto contours = zero_force_curves(grid);
        summary["zero_force_curves"] = contours.curves.size();
        summary["identically_zero"] = contours.identically_zero;
        if (!cfg.output.path.empty() && cfg.output.path != "-") {
            json c = {{"identically_zero", contours.identically_zero}, {"curves", contours.curves}};
            emit(cfg.output.path + ".contours.json", c.dump() + "\n");
        }
    }
    // With the table on stdout the summary goes to stderr.
    (cfg.output.path.empty() || cfg.output.path == "-" ? std::cerr : std::cout) << summary.dump(2) << "\n";
    if (failed) return kPhysics;
    if (short_of_tol) return kTolerance;
    return kOk;
}

int run_contours(const std::string& path, const Overrides& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open grid file " + path);
    auto grid = read_csv(in);
    auto contours = zero_force_curves(grid);
    json out = {{"identically_zero", contours.identically_zero}, {"curves", contours.curves}};
    emit(overrides.out, out.dump() + "\n");
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casimir force on a piston with general boundary conditions"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Overrides overrides;
    std::string input;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol", overrides.tol, "absolute force tolerance");
        sub->add_option("--lambda-max", overrides.lambda_max, "transverse spectrum cutoff");
        sub->add_option("--threads", overrides.threads, "worker threads (0: all cores)");
        sub->add_option("--out", overrides.out, "output path ('-' for stdout)");
    };
    auto* single = app.add_subcommand("single", "force (and energy, with a [zeta] section) at one configuration");
    single->add_option("config", input, "config file")->required();
    add_common(single);
    auto* scan = app.add_subcommand("scan", "force on a one- or two-parameter grid");
    scan->add_option("config", input, "config file")->required();
    add_common(scan);
    auto* contours = app.add_subcommand("contours", "zero-force curves of a CSV grid");
    contours->add_option("grid", input, "CSV written by scan")->required();
    contours->add_option("--out", overrides.out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kConfig;
    }

    try {
        if (*single) return run_single(input, overrides);
        if (*scan) return run_scan_command(input, overrides);
        return run_contours(input, overrides);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const OrderingError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const ToleranceNotMet& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kTolerance;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPhysics;
    }
}
