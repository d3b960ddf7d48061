#pragma once

#include <cstdint>

#include "dkg/report.hpp"
#include "dkg/types.hpp"

namespace dkg {

// Dirac representation of the gamma matrices for metric g = diag(-1,1,1,1):
//   {g^mu, g^nu} = -2 g_{mu nu} I_4,   (g^mu)^* = -g_{mu nu} g^nu,
//   gamma5 = i g^0 g^1 g^2 g^3,        upsilon = i g^0 gamma5 = -g^1 g^2 g^3.
// Entries are exact (0, +-1, +-i), so every identity below holds to rounding.
struct GammaSet {
    Mat4 gamma[4];
    Mat4 gamma5;
    Mat4 upsilon;

    double metric(int mu, int nu) const {
        if (mu != nu) return 0.0;
        return mu == 0 ? -1.0 : 1.0;
    }
    // alpha^a = g^0 g^a (Hermitian), used by the solver and the free flow.
    Mat4 alpha(int a) const { return gamma[0] * gamma[a]; }
};

GammaSet build_gamma_set();

// Unit spatial direction omega = x / r.
struct Direction {
    Vec3 omega;
    explicit Direction(const Vec3& w);
};

// [v]_pm = (I_4 +- omega_a g^0 g^a) v.
Spinor project_pm(const GammaSet& gs, const Spinor& v, const Direction& w, int sign);

// |[v1]_+^* g^0 [v2]_+| : vanishes identically for unit omega.
double plus_annihilation_residual(const GammaSet& gs, const Spinor& v1,
                                  const Spinor& v2, const Direction& w);

// v1^* g^0 v2 (real for v1 = v2).
cplx bilinear_gamma0(const GammaSet& gs, const Spinor& v1, const Spinor& v2);

// All 16 anticommutator relations plus the 4 conjugation relations,
// (gamma5)^2 = I, {gamma5, g^a} = 0, upsilon = i g^0 gamma5 = -g^1 g^2 g^3.
IdentityReport verify_clifford(const GammaSet& gs);

// Direction-dependent matrix identities:
//   (I - omega_a g^0 g^a)(g^0 - g^b omega_b) = 0,
//   upsilon g^mu gamma5 + gamma5 (g^mu)^* upsilon = 0,
//   [gamma5 v]_- = gamma5 [v]_-  on random spinors.
IdentityReport misc_matrix_identities(const GammaSet& gs, const Direction& w,
                                      std::uint64_t seed = 1);

// Property sweep over `samples` random (v, omega) pairs: projection algebra,
// plus-annihilation, |[v]_-|^2 = 2|v|^2 - 2 omega_a Re(v^* g^0 g^a v), and the
// quarter-split of v1^* g^0 v2 into [.]_-/[.]_+ cross terms.
IdentityReport random_identity_sweep(const GammaSet& gs, int samples,
                                     std::uint64_t seed);

}  // namespace dkg
