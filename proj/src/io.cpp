#include "tcm/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace tcm {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_doubles_le(std::ostream& out, const std::vector<double>& v) {
    static_assert(sizeof(double) == 8);
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(v.data()),
                  static_cast<std::streamsize>(v.size() * sizeof(double)));
    } else {
        for (double d : v) {
            auto u = std::bit_cast<std::array<char, 8>>(d);
            std::reverse(u.begin(), u.end());
            out.write(u.data(), 8);
        }
    }
}

void read_doubles_le(std::istream& in, std::vector<double>& v) {
    if constexpr (std::endian::native == std::endian::little) {
        in.read(reinterpret_cast<char*>(v.data()),
                static_cast<std::streamsize>(v.size() * sizeof(double)));
    } else {
        for (double& d : v) {
            std::array<char, 8> u{};
            in.read(u.data(), 8);
            std::reverse(u.begin(), u.end());
            d = std::bit_cast<double>(u);
        }
    }
}

}  // namespace

std::string csv_text(const std::vector<DiagnosticsRow>& rows) {
    std::ostringstream out;
    out << csv_header << "\n";
    for (const auto& r : rows) {
        out << fmt17(r.t) << ',' << fmt17(r.A) << ',' << fmt17(r.B) << ',' << fmt17(r.E) << ','
            << fmt17(r.crossing) << ',' << fmt17(r.l2_energy) << ',' << fmt17(r.energy_residual)
            << ',' << fmt17(r.max_linf) << "\n";
    }
    return out.str();
}

void write_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << csv_text(rows);
    if (!out) throw IoError("write failed: " + path);
}

void write_snapshot(const std::string& path, Transformer& tr, const TCMState& state) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    const Grid& g = state.grid();
    out << "TCM1 " << g.n() << ' ' << fmt17(g.side()) << ' ' << fmt17(state.t) << ' '
        << fmt17(state.mu) << ' ' << fmt17(state.nu) << "\n";
    const std::pair<const char*, const SpectralField*> fields[] = {
        {"u1", &state.u.x}, {"u2", &state.u.y}, {"v1", &state.v.x},
        {"v2", &state.v.y}, {"theta", &state.theta}};
    for (const auto& [name, f] : fields) {
        out << name << "\n";
        write_doubles_le(out, tr.inverse(*f).values);
    }
    if (!out) throw IoError("write failed: " + path);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::string magic;
    Snapshot snap;
    in >> magic >> snap.n >> snap.side >> snap.t >> snap.mu >> snap.nu;
    if (magic != "TCM1" || !in) throw IoError("bad snapshot header: " + path);
    in.ignore(1);  // newline after the header
    std::string name;
    while (std::getline(in, name)) {
        if (name.empty()) break;
        std::vector<double> values(static_cast<std::size_t>(snap.n) * static_cast<std::size_t>(snap.n));
        read_doubles_le(in, values);
        if (!in) throw IoError("truncated snapshot field " + name + ": " + path);
        snap.fields.emplace_back(name, std::move(values));
    }
    return snap;
}

std::string manifest_text(const RunConfig& cfg, const RunVerdicts& verdicts) {
    std::ostringstream out;
    out << emit_config(cfg);
    out << "# termination: " << to_string(verdicts.termination) << "\n";
    out << "# decay_verdict: " << (verdicts.decay_verdict ? "true" : "false") << "\n";
    out << "# decay_early_sup: " << fmt17(verdicts.decay_early_sup) << "\n";
    out << "# decay_late_sup: " << fmt17(verdicts.decay_late_sup) << "\n";
    out << "# gronwall_c_fit: " << fmt17(verdicts.gronwall_c_fit) << "\n";
    out << "# condition_lhs: " << fmt17(verdicts.condition_lhs) << "\n";
    out << "# log_condition_lhs: " << fmt17(verdicts.log_condition_lhs) << "\n";
    out << "# advisory_cfl: " << fmt17(verdicts.advisory_cfl) << "\n";
    return out.str();
}

void write_manifest(const std::string& path, const RunConfig& cfg, const RunVerdicts& verdicts) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << manifest_text(cfg, verdicts);
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace tcm
