#include "roughcocycle/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "roughcocycle/csv.hpp"

namespace rough {

namespace {

const std::set<std::string> kMandatory = {"master_seed", "t_horizon", "mesh_exponent", "deltas",
                                          "beta",        "rho",       "q",             "samples"};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters after number '" + v + "'");
        return d;
    } catch (const std::invalid_argument&) {
        fail(line, "expected a number, got '" + v + "'");
    } catch (const std::out_of_range&) {
        fail(line, "number out of range: '" + v + "'");
    }
}

long long parse_int(const std::string& v, int line) {
    try {
        size_t pos = 0;
        long long d = std::stoll(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters after integer '" + v + "'");
        return d;
    } catch (const std::invalid_argument&) {
        fail(line, "expected an integer, got '" + v + "'");
    } catch (const std::out_of_range&) {
        fail(line, "integer out of range: '" + v + "'");
    }
}

uint64_t parse_u64(const std::string& v, int line) {
    try {
        size_t pos = 0;
        unsigned long long d = std::stoull(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters after integer '" + v + "'");
        return d;
    } catch (const std::exception&) {
        fail(line, "expected an unsigned 64-bit integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail(line, "expected true/false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(line, "empty list entry");
        out.push_back(parse_double(item, line));
    }
    if (out.empty()) fail(line, "empty list");
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_double(v[i]);
    }
    return out;
}

}  // namespace

namespace {

// line = 0 marks programmatic assignment (error text drops the line number)
void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value, int line) {
    if (key == "master_seed") cfg.master_seed = parse_u64(value, line);
    else if (key == "t_horizon") cfg.t_horizon = parse_double(value, line);
    else if (key == "mesh_exponent") cfg.mesh_exponent = static_cast<int>(parse_int(value, line));
    else if (key == "deltas") cfg.deltas = parse_list(value, line);
    else if (key == "beta") cfg.beta = parse_double(value, line);
    else if (key == "rho") cfg.rho = parse_double(value, line);
    else if (key == "q") cfg.q = parse_double(value, line);
    else if (key == "samples") cfg.samples = static_cast<int>(parse_int(value, line));
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "field") cfg.field = value;
    else if (key == "dim") cfg.dim = static_cast<int>(parse_int(value, line));
    else if (key == "xi") cfg.xi = parse_list(value, line);
    else if (key == "xi_delta") cfg.xi_delta = parse_list(value, line);
    else if (key == "hurst_list") cfg.hurst_list = parse_list(value, line);
    else if (key == "u_list") cfg.u_list = parse_list(value, line);
    else if (key == "threads") cfg.threads = static_cast<int>(parse_int(value, line));
    else if (key == "kolmogorov") cfg.kolmogorov = parse_bool(value, line);
    else if (key == "rho_list") cfg.rho_list = parse_list(value, line);
    else if (key == "scale_count") cfg.scale_count = static_cast<int>(parse_int(value, line));
    else if (key == "driver") cfg.driver = value;
    else fail(line, "unknown key '" + key + "'");
}

}  // namespace

ExperimentConfig default_config() { return ExperimentConfig{}; }

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    apply_key(cfg, key, trim(value), 0);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_config: cannot open " + path);
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value'");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (value.empty()) fail(line, "empty value for key '" + key + "'");
        if (seen.count(key)) fail(line, "duplicate key '" + key + "'");
        seen.insert(key);
        apply_key(cfg, key, value, line);
    }
    std::vector<std::string> missing;
    for (const auto& k : kMandatory)
        if (!seen.count(k)) missing.push_back(k);
    if (!missing.empty()) {
        std::string msg = "load_config: missing mandatory keys:";
        for (const auto& k : missing) msg += " " + k;
        throw std::invalid_argument(msg);
    }
    validate_config(cfg);
    return cfg;
}

void write_config(const ExperimentConfig& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_config: cannot open " + path);
    out << "master_seed = " << c.master_seed << "\n";
    out << "t_horizon = " << format_double(c.t_horizon) << "\n";
    out << "mesh_exponent = " << c.mesh_exponent << "\n";
    out << "deltas = " << join(c.deltas) << "\n";
    out << "beta = " << format_double(c.beta) << "\n";
    out << "rho = " << format_double(c.rho) << "\n";
    out << "q = " << format_double(c.q) << "\n";
    out << "samples = " << c.samples << "\n";
    out << "out_dir = " << c.out_dir << "\n";
    out << "field = " << c.field << "\n";
    out << "dim = " << c.dim << "\n";
    out << "xi = " << join(c.xi) << "\n";
    out << "xi_delta = " << join(c.xi_delta) << "\n";
    out << "hurst_list = " << join(c.hurst_list) << "\n";
    out << "u_list = " << join(c.u_list) << "\n";
    out << "threads = " << c.threads << "\n";
    out << "kolmogorov = " << (c.kolmogorov ? "true" : "false") << "\n";
    out << "rho_list = " << join(c.rho_list) << "\n";
    out << "scale_count = " << c.scale_count << "\n";
    out << "driver = " << c.driver << "\n";
}

void validate_config(const ExperimentConfig& c) {
    std::vector<std::string> errs;
    if (!(c.t_horizon > 0.0)) errs.push_back("t_horizon must be positive");
    if (c.mesh_exponent < 1 || c.mesh_exponent > 20)
        errs.push_back("mesh_exponent must lie in [1,20]");
    double cells = c.t_horizon / c.mesh();
    if (std::abs(cells - std::llround(cells)) > 1e-9)
        errs.push_back("t_horizon must be a whole number of mesh cells");
    if (c.samples < 100) errs.push_back("samples must be at least 100");
    if (c.deltas.empty()) errs.push_back("deltas must be nonempty");
    for (size_t i = 0; i < c.deltas.size(); ++i) {
        double d = c.deltas[i];
        if (!(d > 0.0 && d <= 1.0)) errs.push_back("every delta must lie in (0,1]");
        if (d < 8.0 * c.mesh())
            errs.push_back("delta " + format_double(d) + " is below 8*mesh; the reference lift "
                           "and the smoothed lift would not be separated");
        if (i > 0 && !(c.deltas[i] < c.deltas[i - 1]))
            errs.push_back("deltas must be sorted strictly descending");
    }
    if (!(c.rho >= 1.0 && c.rho < 2.0)) errs.push_back("rho must lie in [1,2)");
    if (!(c.q > 1.0)) errs.push_back("q must exceed 1");
    if (c.kolmogorov) {
        if (!(1.0 / c.rho - 1.0 / c.q > 2.0 / 3.0))
            errs.push_back("Kolmogorov regime needs 1/rho - 1/q > 2/3");
        double hi = 0.5 / c.rho - 0.5 / c.q;
        if (!(c.beta > 1.0 / 3.0 && c.beta < hi))
            errs.push_back("beta must lie in (1/3, 1/(2 rho) - 1/(2 q)) = (1/3, " +
                           format_double(hi) + ")");
    } else if (!(c.beta > 1.0 / 3.0 && c.beta < 0.5)) {
        errs.push_back("beta must lie in (1/3, 1/2)");
    }
    if (c.dim < 1) errs.push_back("dim must be positive");
    if (c.xi.empty()) errs.push_back("xi must be nonempty");
    if (c.xi_delta.size() != c.xi.size()) errs.push_back("xi_delta must match xi in size");
    for (double h : c.hurst_list)
        if (!(h > 0.0 && h < 1.0)) errs.push_back("hurst values must lie in (0,1)");
    for (double u : c.u_list)
        if (u < 0.0) errs.push_back("u values must be nonnegative");
    for (double r : c.rho_list)
        if (!(r >= 1.0 && r < 2.0)) errs.push_back("rho_list values must lie in [1,2)");
    if (c.scale_count < 2 || c.scale_count > 16) errs.push_back("scale_count must lie in [2,16]");
    if (c.driver != "bm" && c.driver != "smooth") errs.push_back("driver must be bm or smooth");
    if (!errs.empty()) {
        std::string msg = "invalid config:";
        for (const auto& e : errs) msg += "\n  - " + e;
        throw std::invalid_argument(msg);
    }
}

}  // namespace rough
