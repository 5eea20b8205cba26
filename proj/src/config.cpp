#include "casimir/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <tuple>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

namespace pt = boost::property_tree;

// expr := term (('+'|'-') term)*, term := unary (('*'|'/') unary)*,
// unary := '-' unary | atom, atom := number | "pi" | '(' expr ')'
class Expression {
public:
    Expression(const std::string& text, const std::string& key) : s_(text), key_(key) {}

    double evaluate() {
        double v = expr();
        skip();
        if (pos_ != s_.size()) fail();
        if (!std::isfinite(v)) fail();
        return v;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail() const { throw ConfigError(key_ + ": cannot read a number from '" + s_ + "'"); }

    double expr() {
        double v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    double term() {
        double v = unary();
        for (;;) {
            if (eat('*')) v *= unary();
            else if (eat('/')) v /= unary();
            else return v;
        }
    }
    double unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return atom();
    }
    double atom() {
        skip();
        if (eat('(')) {
            double v = expr();
            if (!eat(')')) fail();
            return v;
        }
        if (s_.compare(pos_, 2, "pi") == 0) {
            pos_ += 2;
            return std::numbers::pi;
        }
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail();
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    const std::string& s_;
    const std::string& key_;
    std::size_t pos_ = 0;
};

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    bool has(const std::string& key) const { return static_cast<bool>(tree_.get_optional<std::string>(key)); }

    std::string text(const std::string& key) const {
        auto v = tree_.get_optional<std::string>(key);
        if (!v) throw ConfigError("missing required key " + key);
        return *v;
    }
    double number(const std::string& key) const { return parse_number(text(key), key); }
    double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

    int integer(const std::string& key, int fallback) const {
        if (!has(key)) return fallback;
        double v = number(key);
        if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key + ": expected an integer");
        return static_cast<int>(v);
    }
    bool flag(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        std::string v = text(key);
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw ConfigError(key + ": expected true or false");
    }

private:
    const pt::ptree& tree_;
};

AxisSpec read_axis(const Reader& r, const std::string& prefix) {
    AxisSpec axis;
    axis.name = r.text(prefix + "_name");
    axis.lo = r.number(prefix + "_lo");
    axis.hi = r.number(prefix + "_hi");
    axis.steps = r.integer(prefix + "_steps", 0);
    const auto& names = Parameters::names();
    if (std::find(names.begin(), names.end(), axis.name) == names.end())
        throw ConfigError(prefix + "_name: unknown parameter '" + axis.name + "'");
    if (axis.steps < 2) throw ConfigError(prefix + "_steps: need at least 2 steps");
    return axis;
}

}  // namespace

double parse_number(const std::string& text, const std::string& key) { return Expression(text, key).evaluate(); }

const std::vector<std::string>& Parameters::names() {
    static const std::vector<std::string> all = {"a",  "alpha", "beta", "theta", "gamma", "n1", "n2",
                                                 "n3", "q1",    "q2",   "q3",    "L"};
    return all;
}

double Parameters::get(const std::string& name) const {
    if (name == "L") return L;
    if (name == "a") return a;
    if (name == "alpha") return alpha;
    if (name == "beta") return beta;
    if (name == "theta") return theta;
    if (name == "gamma") return gamma;
    if (name.size() == 2 && (name[0] == 'n' || name[0] == 'q') && name[1] >= '1' && name[1] <= '3')
        return (name[0] == 'n' ? n : q)[name[1] - '1'];
    throw ConfigError("unknown parameter '" + name + "'");
}

void Parameters::set(const std::string& name, double value) {
    if (name == "L") L = value;
    else if (name == "a") a = value;
    else if (name == "alpha") alpha = value;
    else if (name == "beta") beta = value;
    else if (name == "theta") theta = value;
    else if (name == "gamma") gamma = value;
    else if (name.size() == 2 && (name[0] == 'n' || name[0] == 'q') && name[1] >= '1' && name[1] <= '3')
        (name[0] == 'n' ? n : q)[name[1] - '1'] = value;
    else throw ConfigError("unknown parameter '" + name + "'");
}

NormalizedPiston build_piston(const Parameters& p, bool diagnostic) {
    if (!(p.L > 0.0) || !std::isfinite(p.L)) throw ConfigError("geometry.L: must be positive");
    if (!(p.a > 0.0 && p.a < p.L)) throw ConfigError("geometry.a: must lie strictly between 0 and L");
    auto norm = [](const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); };
    NormalizedPiston out;
    out.n_norm = norm(p.n);
    out.q_norm = norm(p.q);
    try {
        out.config.outer = BoundaryUnitary::make(p.alpha, p.beta, p.n);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("outer.n1..n3: ") + e.what());
    }
    try {
        out.config.wall = BoundaryUnitary::make(p.theta, p.gamma, p.q);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("wall.q1..q3: ") + e.what());
    }
    out.config.length = p.L;
    out.config.position = p.a;
    out.config.diagnostic = diagnostic;
    return out;
}

RunConfig parse_config(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    const Reader r(tree);
    RunConfig cfg;
    auto& p = cfg.params;
    p.L = r.number("geometry.L", 1.0);
    p.a = r.number("geometry.a");
    p.alpha = r.number("outer.alpha");
    p.beta = r.number("outer.beta");
    p.theta = r.number("wall.theta");
    p.gamma = r.number("wall.gamma");
    // A unit vector given in part has its missing components set to zero;
    // one not given at all defaults to (0, 0, 1).
    for (auto [section, letter, target] : {std::tuple{"outer.", 'n', &p.n}, std::tuple{"wall.", 'q', &p.q}}) {
        const std::string stem = std::string(section) + letter;
        if (!r.has(stem + "1") && !r.has(stem + "2") && !r.has(stem + "3")) continue;
        for (int i = 0; i < 3; ++i) (*target)[i] = r.number(stem + std::to_string(i + 1), 0.0);
    }

    auto& num = cfg.numerics;
    num.tol = r.number("numerics.tol", num.tol);
    num.lambda_max = r.number("numerics.lambda_max", num.lambda_max);
    num.threads = r.integer("numerics.threads", num.threads);
    if (r.has("numerics.manifold")) num.manifold = r.text("numerics.manifold");
    num.dimension = r.integer("numerics.dimension", num.dimension);
    if (r.has("numerics.spectrum_file")) num.spectrum_file = r.text("numerics.spectrum_file");
    num.diagnostic = r.flag("numerics.diagnostic", false);
    if (!(num.tol > 0.0)) throw ConfigError("numerics.tol: must be positive");
    if (!(num.lambda_max > 0.0)) throw ConfigError("numerics.lambda_max: must be positive");
    if (num.threads < 0) throw ConfigError("numerics.threads: must be >= 0");
    if (num.manifold != "point" && num.manifold != "sphere" && num.manifold != "disk" && num.manifold != "file")
        throw ConfigError("numerics.manifold: expected point, sphere, disk or file");
    if (num.manifold == "sphere" && num.dimension < 1) throw ConfigError("numerics.dimension: must be >= 1");
    if (num.manifold == "file" && num.spectrum_file.empty())
        throw ConfigError("missing required key numerics.spectrum_file");

    if (r.has("scan.axis1_name")) cfg.axis1 = read_axis(r, "scan.axis1");
    if (r.has("scan.axis2_name")) cfg.axis2 = read_axis(r, "scan.axis2");
    if (cfg.axis2 && !cfg.axis1) throw ConfigError("scan.axis1_name: axis2 given without axis1");
    if (cfg.axis1 && cfg.axis2 && cfg.axis1->name == cfg.axis2->name)
        throw ConfigError("scan.axis2_name: both axes vary " + cfg.axis1->name);

    if (r.has("output.path")) cfg.output.path = r.text("output.path");
    if (r.has("output.format")) cfg.output.format = r.text("output.format");
    if (cfg.output.format != "csv" && cfg.output.format != "json-lines")
        throw ConfigError("output.format: expected csv or json-lines");

    if (tree.get_child_optional("zeta")) {
        ZetaNData zn;
        zn.zeta_minus1 = r.number("zeta.zeta_minus1", 0.0);
        zn.zeta_prime_minus1 = r.number("zeta.zeta_prime_minus1", 0.0);
        zn.zeta_0 = r.number("zeta.zeta_0", 0.0);
        zn.zeta_prime_0 = r.number("zeta.zeta_prime_0", 0.0);
        for (int i = 0; i <= 64; ++i) {
            const std::string res = "zeta.residue_" + std::to_string(i), fin = "zeta.finite_" + std::to_string(i);
            if (r.has(res) || r.has(fin)) zn.half_points[i] = {r.number(res, 0.0), r.number(fin, 0.0)};
        }
        cfg.zeta = zn;
        cfg.zeta_order = r.integer("zeta.order", -1);
    }

    // Catch bad geometry and unit vectors now rather than per run.
    build_piston(p, num.diagnostic);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    return parse_config(in);
}

std::string to_ini(const RunConfig& cfg) {
    std::ostringstream out;
    const auto& p = cfg.params;
    auto line = [&](const std::string& key, double v) { out << key << " = " << format_double(v) << "\n"; };
    out << "[geometry]\n";
    line("L", p.L);
    line("a", p.a);
    out << "\n[outer]\n";
    line("alpha", p.alpha);
    line("beta", p.beta);
    for (int i = 0; i < 3; ++i) line("n" + std::to_string(i + 1), p.n[i]);
    out << "\n[wall]\n";
    line("theta", p.theta);
    line("gamma", p.gamma);
    for (int i = 0; i < 3; ++i) line("q" + std::to_string(i + 1), p.q[i]);

    const auto& num = cfg.numerics;
    out << "\n[numerics]\n";
    line("tol", num.tol);
    line("lambda_max", num.lambda_max);
    out << "threads = " << num.threads << "\n";
    out << "manifold = " << num.manifold << "\n";
    out << "dimension = " << num.dimension << "\n";
    if (!num.spectrum_file.empty()) out << "spectrum_file = " << num.spectrum_file << "\n";
    out << "diagnostic = " << (num.diagnostic ? "true" : "false") << "\n";

    if (cfg.axis1) {
        out << "\n[scan]\n";
        for (const auto* axis : {&cfg.axis1, &cfg.axis2}) {
            if (!*axis) continue;
            const std::string prefix = axis == &cfg.axis1 ? "axis1" : "axis2";
            out << prefix << "_name = " << (*axis)->name << "\n";
            line(prefix + "_lo", (*axis)->lo);
            line(prefix + "_hi", (*axis)->hi);
            out << prefix << "_steps = " << (*axis)->steps << "\n";
        }
    }
    if (!cfg.output.path.empty() || cfg.output.format != "csv") {
        out << "\n[output]\n";
        if (!cfg.output.path.empty()) out << "path = " << cfg.output.path << "\n";
        out << "format = " << cfg.output.format << "\n";
    }
    if (cfg.zeta) {
        const auto& zn = *cfg.zeta;
        out << "\n[zeta]\n";
        if (cfg.zeta_order >= 0) out << "order = " << cfg.zeta_order << "\n";
        line("zeta_minus1", zn.zeta_minus1);
        line("zeta_prime_minus1", zn.zeta_prime_minus1);
        line("zeta_0", zn.zeta_0);
        line("zeta_prime_0", zn.zeta_prime_0);
        for (const auto& [i, rf] : zn.half_points) {
            line("residue_" + std::to_string(i), rf.first);
            line("finite_" + std::to_string(i), rf.second);
        }
    }
    return out.str();
}

TransverseSpectrum make_spectrum(const NumericsSpec& numerics) {
    if (numerics.manifold == "point") return point_spectrum();
    if (numerics.manifold == "sphere") return sphere_spectrum(numerics.dimension, numerics.lambda_max);
    if (numerics.manifold == "disk") return disk_spectrum(numerics.lambda_max);
    if (numerics.manifold == "file") return load_spectrum(numerics.spectrum_file);
    throw ConfigError("numerics.manifold: expected point, sphere, disk or file");
}

}  // namespace casimir
