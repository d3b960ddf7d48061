#pragma once

#include "dkg/clifford.hpp"
#include "dkg/functionals.hpp"
#include "dkg/solver.hpp"
#include "dkg/vector_fields.hpp"

namespace dkg {

// The three nonlinearities of the hidden wave equation for
// phi_tilde = phi + 1/4 psi* Upsilon psi (massive spinor, pseudoscalar
// coupling):
//   N1 = -phi psi* g0 (i gamma^mu d_mu psi + psi)
//   N2 = -phi^2 psi* Upsilon psi
//   N3 = sum_a Q_{0a}(psi, i gamma5 g^a psi)
//        + sum_{b<a} Q_{ab}(g0 g^a psi, i gamma5 g^b psi)
// N1 is also evaluated through the on-shell substitution
// i gamma^mu d_mu psi + psi = 2 psi - i phi gamma5 psi.
struct NTerms {
    CField N1;
    CField N1_onshell;
    CField N2;
    CField N3;
};

NTerms n_terms(const SpinorWindow& psi, const ScalarWindow& phi, const GammaSet& gs);

// Support-core max-norm residuals, all expected to vanish under refinement.

// -box phi_tilde = 1/2 (N1 + N2 + N3).
double hidden_wave_residual(const SpinorWindow& psi, const ScalarWindow& phi,
                            const GammaSet& gs);

// psi* Upsilon psi = Q0(psi, Upsilon psi) + N1 + N3.
double psi_upsilon_expansion_residual(const SpinorWindow& psi,
                                      const ScalarWindow& phi, const GammaSet& gs);

// -box(psi* Upsilon psi) = -2 psi* Upsilon psi - 2 Q0(psi, Upsilon psi) + 2 N2.
double box_psi_upsilon_residual(const SpinorWindow& psi, const ScalarWindow& phi,
                                const GammaSet& gs);

// Auxiliary wave field checks: -i gamma^mu d_mu Psi = psi, and
// [psi]_- = -i (I - omega_a g0 g^a) g^b G_b Psi away from the origin.
struct AuxResiduals {
    double reconstruction;
    double minus_representation;
};

AuxResiduals aux_reconstruction_residuals(const SpinorWindow& psi,
                                          const SpinorWindow& aux,
                                          const GammaSet& gs);

// Pointwise ratio |dr [psi]_-| / [ (t+r)^{-1} (sum |hatGamma psi| + |psi|) + |G| ]
// over the support core with t - r >= 1 and r >= h; max ratio reported.
double radial_derivative_bound_ratio(const SpinorWindow& psi,
                                     const ScalarWindow& phi,
                                     const CaseConfig& c, const GammaSet& gs);

}  // namespace dkg
