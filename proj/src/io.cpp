#include "dkg/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dkg/report.hpp"

namespace dkg {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

#pragma pack(push, 1)
struct SnapshotHeader {
    char magic[4];         // "DKG1"
    std::uint32_t n;
    double h;
    double L;
    double t;
    std::uint32_t case_id;
    std::uint32_t kind;    // FieldKind
};
#pragma pack(pop)

void write_header(std::ofstream& out, const GridSpec& g, double t,
                  std::uint32_t case_id, FieldKind kind) {
    SnapshotHeader hd{};
    std::memcpy(hd.magic, "DKG1", 4);
    hd.n = static_cast<std::uint32_t>(g.n);
    hd.h = g.h();
    hd.L = g.half_width;
    hd.t = t;
    hd.case_id = case_id;
    hd.kind = static_cast<std::uint32_t>(kind);
    out.write(reinterpret_cast<const char*>(&hd), sizeof(hd));
}

SnapshotHeader read_header(std::ifstream& in, FieldKind expect) {
    SnapshotHeader hd{};
    in.read(reinterpret_cast<char*>(&hd), sizeof(hd));
    if (!in || std::memcmp(hd.magic, "DKG1", 4) != 0)
        throw std::runtime_error("snapshot: bad magic");
    if (hd.kind != static_cast<std::uint32_t>(expect))
        throw std::runtime_error("snapshot: unexpected field kind");
    return hd;
}

GridSpec grid_from_header(const SnapshotHeader& hd) {
    // h decides which boundary mode produced the file
    double h_zero = 2.0 * hd.L / (hd.n - 1);
    Boundary b = std::abs(hd.h - h_zero) < 1e-12 ? Boundary::ZeroPad : Boundary::Periodic;
    return GridSpec(static_cast<int>(hd.n), hd.L, b);
}

}  // namespace

void write_spinor_snapshot(const std::string& path, const SpinorField& f,
                           double t, std::uint32_t case_id) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_header(out, f.grid, t, case_id, FieldKind::Spinor);
    std::vector<double> row(8);
    for (const Spinor& v : f.data) {
        for (int c = 0; c < 4; ++c) {
            row[2 * c] = v[c].real();
            row[2 * c + 1] = v[c].imag();
        }
        out.write(reinterpret_cast<const char*>(row.data()), 8 * sizeof(double));
    }
}

void write_scalar_snapshot(const std::string& path, const ScalarField& f,
                           double t, std::uint32_t case_id) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_header(out, f.grid, t, case_id, FieldKind::Scalar);
    out.write(reinterpret_cast<const char*>(f.data.data()),
              static_cast<std::streamsize>(f.data.size() * sizeof(double)));
}

SpinorField read_spinor_snapshot(const std::string& path, double& t_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    SnapshotHeader hd = read_header(in, FieldKind::Spinor);
    t_out = hd.t;
    SpinorField f(grid_from_header(hd));
    std::vector<double> row(8);
    for (Spinor& v : f.data) {
        in.read(reinterpret_cast<char*>(row.data()), 8 * sizeof(double));
        for (int c = 0; c < 4; ++c) v[c] = cplx(row[2 * c], row[2 * c + 1]);
    }
    if (!in) throw std::runtime_error("snapshot: truncated payload");
    return f;
}

ScalarField read_scalar_snapshot(const std::string& path, double& t_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    SnapshotHeader hd = read_header(in, FieldKind::Scalar);
    t_out = hd.t;
    ScalarField f(grid_from_header(hd));
    in.read(reinterpret_cast<char*>(f.data.data()),
            static_cast<std::streamsize>(f.data.size() * sizeof(double)));
    if (!in) throw std::runtime_error("snapshot: truncated payload");
    return f;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    auto trim = [](std::string s) {
        std::size_t a = s.find_first_not_of(" \t\r");
        std::size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

RunConfig load_run_config(const std::string& path, const GammaSet& gs) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto kv = parse_config_text(ss.str());

    auto get = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::runtime_error("config: missing key " + key);
        return it->second;
    };
    auto get_or = [&](const std::string& key, const std::string& dflt) {
        auto it = kv.find(key);
        return it == kv.end() ? dflt : it->second;
    };

    RunConfig cfg;
    Boundary b = get_or("boundary_mode", "zero-pad") == "periodic" ? Boundary::Periodic
                                                                   : Boundary::ZeroPad;
    cfg.grid = GridSpec(std::stoi(get("n")), std::stod(get("L")), b);
    cfg.cas = make_case(parse_case(get("case")), gs);
    cfg.dt = std::stod(get("dt"));
    cfg.t_end = std::stod(get("t_end"));
    cfg.epsilon = std::stod(get_or("epsilon", "1e-3"));
    cfg.delta = std::stod(get_or("delta", "0.05"));
    cfg.r0 = std::stod(get_or("r0", "0.8"));
    cfg.cadence = std::stoi(get_or("cadence", "8"));
    cfg.seed = std::stoull(get_or("seed", "1"));
    cfg.evolve_aux = get_or("evolve_aux", "0") == "1";
    cfg.interactions_on = get_or("interactions_on", "1") != "0";
    return cfg;
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw std::invalid_argument("write_csv: row width mismatch");
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << fmt_g17(row[i]);
        out << "\n";
    }
}

std::string to_json(const IdentityReport& report) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < report.size(); ++i) {
        const IdentityEntry& e = report[i];
        if (i) out << ",";
        out << "\n  {\"identity_name\": \"" << e.name << "\", \"max_residual\": "
            << fmt_g17(e.max_residual()) << ", \"residuals\": [";
        for (std::size_t j = 0; j < e.residuals.size(); ++j)
            out << (j ? ", " : "") << fmt_g17(e.residuals[j]);
        out << "]";
        if (e.order) out << ", \"observed_order\": " << fmt_g17(*e.order);
        out << ", \"threshold\": " << fmt_g17(e.threshold)
            << ", \"pass\": " << (e.pass ? "true" : "false")
            << ", \"samples\": " << e.samples << ", \"seed\": " << e.seed << "}";
    }
    out << "\n]\n";
    return out.str();
}

double observed_order(const std::vector<double>& hs,
                      const std::vector<double>& residuals) {
    if (hs.size() != residuals.size() || hs.size() < 2)
        throw std::invalid_argument("observed_order: need >= 2 matched points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
        double x = std::log(hs[i]), y = std::log(residuals[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace dkg
