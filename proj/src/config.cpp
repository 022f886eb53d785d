#include "inventro/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "inventro/util.hpp"

namespace inventro {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, int line) {
    try {
        size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError(line, "malformed number '" + v + "'");
    }
}

std::vector<double> parse_numbers(const std::string& v, int line) {
    std::istringstream is(v);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) out.push_back(parse_number(tok, line));
    if (out.empty()) throw ParseError(line, "expected at least one number");
    return out;
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ParseError(line, "expected a boolean, got '" + v + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) throw ParseError(lineno, "expected 'key = value'");
        seen.insert(key);

        if (key == "system") {
            static const std::set<std::string> known{"linear2d", "pendulum", "henon",
                                                     "henon-reversed"};
            if (!known.count(val))
                throw ParseError(lineno, "unknown system '" + val +
                                             "' (linear2d|pendulum|henon|henon-reversed)");
            cfg.system = val;
        } else if (key == "b") {
            cfg.b = parse_number(val, lineno);
            if (!(cfg.b > 0.0)) throw ParseError(lineno, "b must be positive");
        } else if (key == "rho") {
            cfg.rho = parse_number(val, lineno);
            if (!(cfg.rho > 0.0)) throw ParseError(lineno, "rho must be positive");
        } else if (key == "eps") {
            cfg.eps = parse_number(val, lineno);
            if (!(cfg.eps > 0.0)) throw ParseError(lineno, "eps must be positive");
        } else if (key == "T_s") {
            cfg.T_s = parse_number(val, lineno);
            if (!(cfg.T_s > 0.0)) throw ParseError(lineno, "T_s must be positive");
        } else if (key == "substeps") {
            cfg.substeps = static_cast<int>(parse_number(val, lineno));
            if (cfg.substeps < 1) throw ParseError(lineno, "substeps must be >= 1");
        } else if (key == "domain") {
            std::vector<double> nums = parse_numbers(val, lineno);
            if (nums.size() % 2 != 0)
                throw ParseError(lineno, "domain needs lo hi pairs per dimension");
            int d = static_cast<int>(nums.size() / 2);
            Eigen::VectorXd lo(d), hi(d);
            for (int i = 0; i < d; ++i) {
                lo[i] = nums[2 * i];
                hi[i] = nums[2 * i + 1];
                if (!(lo[i] < hi[i]))
                    throw ParseError(lineno, "domain bounds must satisfy lo < hi");
            }
            cfg.domain = IntervalBox(std::move(lo), std::move(hi));
        } else if (key == "eta_s") {
            cfg.eta_s = parse_numbers(val, lineno);
            for (double e : cfg.eta_s)
                if (!(e > 0.0)) throw ParseError(lineno, "eta_s must be positive");
        } else if (key == "eta_i") {
            cfg.eta_i = parse_numbers(val, lineno);
            for (double e : cfg.eta_i)
                if (!(e > 0.0)) throw ParseError(lineno, "eta_i must be positive");
        } else if (key == "determinizer") {
            if (val != "maxfreq" && val != "minnorm")
                throw ParseError(lineno,
                                 "determinizer must be 'maxfreq' or 'minnorm', got '" + val + "'");
            cfg.determinizer = val;
        } else if (key == "intersect_reversed") {
            cfg.intersect_reversed = parse_bool(val, lineno);
        } else if (key == "max_cells") {
            cfg.max_cells = static_cast<int64_t>(parse_number(val, lineno));
            if (cfg.max_cells < 1) throw ParseError(lineno, "max_cells must be >= 1");
        } else if (key == "max_oracle_nodes") {
            cfg.max_oracle_nodes = static_cast<int64_t>(parse_number(val, lineno));
            if (cfg.max_oracle_nodes < 1)
                throw ParseError(lineno, "max_oracle_nodes must be >= 1");
        } else if (key == "max_subsets") {
            cfg.max_subsets = static_cast<int64_t>(parse_number(val, lineno));
            if (cfg.max_subsets < 1) throw ParseError(lineno, "max_subsets must be >= 1");
        } else if (key == "threads") {
            cfg.threads = static_cast<int>(parse_number(val, lineno));
            if (cfg.threads < 0) throw ParseError(lineno, "threads must be >= 0");
        } else if (key == "out_dir") {
            cfg.out_dir = val;
        } else {
            throw ParseError(lineno, "unknown key '" + key + "'");
        }
    }

    std::string missing;
    for (const char* req : {"system", "eta_s", "eta_i"})
        if (!seen.count(req)) missing += missing.empty() ? req : std::string(", ") + req;
    if (!missing.empty())
        throw ParseError(lineno, "missing required keys: " + missing);

    if (cfg.system == "pendulum" && !(cfg.rho < cfg.b * cfg.b + 1.0))
        throw ParseError(lineno, "pendulum requires 0 < rho < b^2 + 1");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

int effective_threads(const RunConfig& cfg) {
    if (const char* env = std::getenv("INVENTRO_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    if (cfg.threads > 0) return cfg.threads;
    return default_thread_count();
}

}  // namespace inventro
