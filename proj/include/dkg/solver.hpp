#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dkg/clifford.hpp"
#include "dkg/grid.hpp"
#include "dkg/vector_fields.hpp"

namespace dkg {

enum class Case { I, II, III, IV };

std::string case_name(Case c);
Case parse_case(const std::string& s);

// (m, M, V, U) per case; m is the scalar mass (0 for all four coupled cases,
// 1 accepted only for the linear Klein-Gordon validation mode).
struct CaseConfig {
    Case id = Case::I;
    double M = 0.0;
    double m = 0.0;
    Mat4 V;
    Mat4 U;
};

CaseConfig make_case(Case c, const GammaSet& gs);

// Closed-form bump data: Gaussian times C^7 compact cutoff at radius r0,
// amplitude epsilon; prescribed at t = 2.
struct InitialData {
    double epsilon = 1e-3;
    double r0 = 0.8;
};

// exp(-3(r/r0)^2) * (1 - (r/r0)^2)^8 for r < r0, else 0.
double bump_profile(double r, double r0);

struct State {
    double t = 0.0;
    SpinorField psi;
    ScalarField phi;
    ScalarField phi_t;
    SpinorField aux;
    SpinorField aux_t;
    bool has_aux = false;
};

State make_initial_state(const GridSpec& grid, const InitialData& data,
                         bool with_aux, const GammaSet& gs, double t0 = 2.0);

struct RunConfig {
    GridSpec grid;
    CaseConfig cas;
    double dt = 0.0;
    double t_end = 0.0;
    double epsilon = 1e-3;
    double delta = 0.05;
    double r0 = 0.8;
    int cadence = 8;        // output every `cadence` steps
    std::uint64_t seed = 1; // recorded with outputs
    bool evolve_aux = false;
    bool interactions_on = true;
    double t0 = 2.0;

    void validate() const;  // CFL and light-cone containment
};

// dt psi = i g0 (phi V psi - M psi) - g0 g^a da psi.
SpinorField dirac_dt(const State& s, const CaseConfig& c, const GammaSet& gs,
                     bool interactions_on = true);

// (dt phi, dt phi_t) with dt phi_t = Lap phi - m^2 phi + psi* U psi; the
// source is real for Hermitian U and its imaginary part is asserted small.
void wave_dt(const State& s, const CaseConfig& c, const GammaSet& gs,
             ScalarField& out_phi_dt, ScalarField& out_phit_dt,
             bool interactions_on = true);

State step_rk4(const State& s, double dt, const CaseConfig& c, const GammaSet& gs,
               bool interactions_on = true);

// Called with a 9-level window of states (center index 4 is at an output
// time). Windows give vector fields four time levels of slack on each side.
using WindowCallback = std::function<void(const std::vector<State>&)>;

// Evolves from t0 to t_end; invokes `on_window` at every output time whose
// window fits inside the run, plus finiteness and containment checks.
// Returns the final state.
State run(const RunConfig& cfg, const GammaSet& gs, const WindowCallback& on_window);

SpinorWindow psi_window(const std::vector<State>& win);
ScalarWindow phi_window(const std::vector<State>& win);
SpinorWindow aux_window(const std::vector<State>& win);

}  // namespace dkg
