#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dkg/clifford.hpp"
#include "dkg/grid.hpp"
#include "dkg/solver.hpp"
#include "dkg/vector_fields.hpp"

namespace dkg {

// q(s) = integral_{-infty}^{s} <tau>^{-1-2 delta} dtau, precomputed by
// Simpson quadrature (series tail below s = -10) on a dense 1D table and
// read back by cubic interpolation. Enters only through e^q in [1, e^{q_max}].
struct GhostProfile {
    double delta;
    double s_min, s_max, ds;
    std::vector<double> table;

    GhostProfile(double delta_, double s_min_, double s_max_, int points = 4001);
    double q(double s) const;
};

// integral |[psi]_-|^2 <t-r>^{-1-2delta} dx at one time slice.
double ghost_increment(const SpinorField& psi, double t, double delta,
                       const GammaSet& gs);

// Max-norm residual (on the support core) of the pointwise divergence
// identity behind the ghost energy bound:
//   d0(e^q |psi|^2) + da(e^q psi* g0 g^a psi)
//     + (e^q / 2) <r-t>^{-1-2delta} |[psi]_-|^2 = -2 e^q Im(psi* g0 G),
// with G the interaction source phi V psi (the mass term drops out).
double ghost_identity_residual(const SpinorWindow& psi, const ScalarWindow& phi,
                               const CaseConfig& c, const GammaSet& gs,
                               double delta);

// E = integral (dt u)^2 + |grad u|^2 ; F = integral u^2 + (Su)^2 + |Om u|^2 + |H u|^2.
std::pair<double, double> wave_energies(const ScalarWindow& w, const GammaSet& gs);

// Weighted conformal energy, both expressions:
//   definition: 1/2 int [(r^2+t^2)|du|^2 + 4 r t dt u dr u] / (t-r)
//               + int [2 t u dt u - u^2] / (t-r) - int r u^2 / (t-r)^2
//   identity:   1/2 int [(Su + 2u)^2 + |Hu|^2 + |Om u|^2] / (t-r).
// Requires numerical support inside K = {r + 1 <= t}; throws otherwise.
std::pair<double, double> weighted_conformal(const ScalarWindow& w, const GammaSet& gs);

// integral u^2 / (t-r) dx, the lower bound the weighted conformal energy
// dominates.
double econ_lower_bound(const ScalarWindow& w);

// L2 norm of apply_multi(ops, w) at the window center.
template <class T>
double op_l2(const TimeWindow<T>& w, const std::vector<OpKind>& ops,
             const GammaSet& gs) {
    return l2_norm(apply_multi(ops, w, gs).at(0));
}

// lhs = sup <t+r><t-r>^{1/2}|f|, rhs = sum_{|I|<=order} ||Gamma^I f||.
std::pair<double, double> klainerman_sobolev_sides(const ScalarWindow& w,
                                                   const GammaSet& gs, int order);

// ||f/(t-r)|| / ||dr f|| for a supported-in-K slice (Hardy-type ratio).
double hardy_ratio(const ScalarWindow& w);

// Initial-data smallness norms: || log(2+|x|) <x>^{k+3/2} |grad^k f| ||_L2
// for k = 0..2, for each data component.
struct WeightedNormReport {
    std::vector<double> psi_norms;   // k = 0, 1, 2
    std::vector<double> phi_norms;
    std::vector<double> phi_t_norms;
};

WeightedNormReport initial_norms(const State& s0, int kmax = 2);

}  // namespace dkg
