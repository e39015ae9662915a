#include "tcm/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace tcm {

const char* to_string(AmplitudeMode m) {
    return m == AmplitudeMode::remark11 ? "remark11" : "explicit";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct KvDoc {
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) != 0; }

    std::string take(const std::string& k) {
        auto it = kv.find(k);
        if (it == kv.end()) throw ParseError("missing key \"" + k + "\"");
        std::string v = it->second;
        kv.erase(it);
        return v;
    }

    std::string take_or(const std::string& k, const std::string& dflt) {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    }
};

KvDoc parse_kv(const std::string& text) {
    KvDoc doc;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ParseError("line " + std::to_string(lineno) + ": empty key or value");
        if (!doc.kv.emplace(key, val).second)
            throw ParseError("duplicate key \"" + key + "\"");
    }
    return doc;
}

double to_double(const std::string& key, std::string v) {
    double factor = 1.0;
    if (v.size() > 2 && v.substr(v.size() - 2) == "pi") {
        factor = std::numbers::pi;
        v = trim(v.substr(0, v.size() - 2));
        if (v.empty()) v = "1";
    }
    std::size_t pos = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ParseError("key \"" + key + "\": not a number: " + v);
    }
    if (pos != v.size()) throw ParseError("key \"" + key + "\": trailing junk: " + v);
    return parsed * factor;
}

int to_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long parsed = 0;
    try {
        parsed = std::stol(v, &pos);
    } catch (const std::exception&) {
        throw ParseError("key \"" + key + "\": not an integer: " + v);
    }
    if (pos != v.size()) throw ParseError("key \"" + key + "\": trailing junk: " + v);
    return static_cast<int>(parsed);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    KvDoc doc = parse_kv(text);
    RunConfig cfg;
    cfg.n_points = to_int("n_points", doc.take("n_points"));
    cfg.side = to_double("side", doc.take("side"));
    cfg.epsilon = to_double("epsilon", doc.take("epsilon"));
    {
        const std::string mode = doc.take_or("amplitude_mode", "remark11");
        if (mode == "remark11")
            cfg.amplitude_mode = AmplitudeMode::remark11;
        else if (mode == "explicit")
            cfg.amplitude_mode = AmplitudeMode::explicit_amplitude;
        else
            throw ParseError("amplitude_mode must be remark11 or explicit, got " + mode);
    }
    if (cfg.amplitude_mode == AmplitudeMode::explicit_amplitude)
        cfg.amplitude = to_double("amplitude", doc.take("amplitude"));
    else if (doc.has("amplitude"))
        cfg.amplitude = to_double("amplitude", doc.take("amplitude"));
    cfg.w0_amplitude = to_double("w0_amplitude", doc.take_or("w0_amplitude", "0"));
    cfg.c0_amplitude = to_double("c0_amplitude", doc.take_or("c0_amplitude", "0"));
    cfg.theta0_amplitude = to_double("theta0_amplitude", doc.take_or("theta0_amplitude", "0"));
    cfg.mu = to_double("mu", doc.take_or("mu", "1"));
    cfg.nu = to_double("nu", doc.take_or("nu", "1"));
    cfg.dt = to_double("dt", doc.take("dt"));
    cfg.t_end = to_double("t_end", doc.take("t_end"));
    cfg.sample_interval = to_double("sample_interval", doc.take_or("sample_interval", "0"));
    cfg.blowup_threshold = to_double("blowup_threshold", doc.take_or("blowup_threshold", "1e6"));
    cfg.c_for_condition = to_double("C_for_condition", doc.take_or("C_for_condition", "1"));
    {
        const std::string f = doc.take_or("formulation", "full");
        if (f == "full")
            cfg.formulation = Formulation::full;
        else if (f == "perturbation")
            cfg.formulation = Formulation::perturbation;
        else
            throw ParseError("formulation must be full or perturbation, got " + f);
    }
    cfg.output_dir = doc.take_or("output_dir", "out");
    if (!doc.kv.empty()) throw ParseError("unknown key \"" + doc.kv.begin()->first + "\"");
    validate(cfg);
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void validate(const RunConfig& cfg) {
    if (cfg.n_points < 8 || cfg.n_points % 2 != 0)
        throw ValidationError("n_points", "must be even and >= 8");
    if (!(cfg.side > 0.0)) throw ValidationError("side", "must be positive");
    if (!(cfg.epsilon > 0.0)) throw ValidationError("epsilon", "must be positive");
    if (cfg.amplitude_mode == AmplitudeMode::remark11 && cfg.epsilon >= std::exp(-1.0))
        throw ValidationError("epsilon", "remark11 amplitude needs epsilon < 1/e");
    const double xi_spacing = 2.0 * std::numbers::pi / cfg.side;
    if (xi_spacing > (cfg.epsilon / 2.0) * (1.0 + 1e-12))
        throw ValidationError("side", "cone unresolved: 2*pi/side must be <= epsilon/2");
    if (!(cfg.mu >= 0.0)) throw ValidationError("mu", "must be nonnegative");
    if (!(cfg.nu >= 0.0)) throw ValidationError("nu", "must be nonnegative");
    if (!(cfg.dt > 0.0)) throw ValidationError("dt", "must be positive");
    if (!(cfg.t_end >= cfg.dt)) throw ValidationError("t_end", "needs dt <= t_end");
    if (cfg.sample_interval != 0.0 && cfg.sample_interval < cfg.dt)
        throw ValidationError("sample_interval", "must be >= dt (or 0 for the default)");
    if (!(cfg.blowup_threshold > 0.0)) throw ValidationError("blowup_threshold", "must be positive");
    if (!(cfg.c_for_condition > 0.0)) throw ValidationError("C_for_condition", "must be positive");
    if (cfg.formulation == Formulation::perturbation && (cfg.mu != 1.0 || cfg.nu != 1.0))
        throw ValidationError("formulation", "perturbation formulation fixes mu = nu = 1");
}

std::string emit_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "n_points = " << cfg.n_points << "\n";
    out << "side = " << fmt(cfg.side) << "\n";
    out << "epsilon = " << fmt(cfg.epsilon) << "\n";
    out << "amplitude_mode = " << to_string(cfg.amplitude_mode) << "\n";
    if (cfg.amplitude_mode == AmplitudeMode::explicit_amplitude || cfg.amplitude != 0.0)
        out << "amplitude = " << fmt(cfg.amplitude) << "\n";
    out << "w0_amplitude = " << fmt(cfg.w0_amplitude) << "\n";
    out << "c0_amplitude = " << fmt(cfg.c0_amplitude) << "\n";
    out << "theta0_amplitude = " << fmt(cfg.theta0_amplitude) << "\n";
    out << "mu = " << fmt(cfg.mu) << "\n";
    out << "nu = " << fmt(cfg.nu) << "\n";
    out << "dt = " << fmt(cfg.dt) << "\n";
    out << "t_end = " << fmt(cfg.t_end) << "\n";
    out << "sample_interval = " << fmt(cfg.sample_interval) << "\n";
    out << "blowup_threshold = " << fmt(cfg.blowup_threshold) << "\n";
    out << "C_for_condition = " << fmt(cfg.c_for_condition) << "\n";
    out << "formulation = " << to_string(cfg.formulation) << "\n";
    out << "output_dir = " << cfg.output_dir << "\n";
    return out.str();
}

}  // namespace tcm
