#pragma once

#include <map>
#include <string>
#include <vector>

#include "dkg/grid.hpp"
#include "dkg/solver.hpp"

namespace dkg {

// Shortest round-trip decimal formatting used for every CSV/JSON number so
// outputs are bit-identical across runs.
std::string fmt_g17(double v);

// Binary snapshot: header {magic "DKG1", n, h, L, t, case id, field kind},
// then little-endian f64 payload (8 doubles per node for spinors: re/im per
// component; 1 per node for scalars).
enum class FieldKind : std::uint32_t { Spinor = 0, Scalar = 1 };

void write_spinor_snapshot(const std::string& path, const SpinorField& f,
                           double t, std::uint32_t case_id);
void write_scalar_snapshot(const std::string& path, const ScalarField& f,
                           double t, std::uint32_t case_id);
SpinorField read_spinor_snapshot(const std::string& path, double& t_out);
ScalarField read_scalar_snapshot(const std::string& path, double& t_out);

// Key-value config text: one `key = value` per line, '#' comments. Keys:
// case, n, L, dt, t_end, epsilon, delta, r0, cadence, boundary_mode, seed.
std::map<std::string, std::string> parse_config_text(const std::string& text);
RunConfig load_run_config(const std::string& path, const GammaSet& gs);

// CSV with a fixed header row; every number through fmt_g17.
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

}  // namespace dkg
