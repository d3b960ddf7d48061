#pragma once

#include <utility>

#include "dkg/clifford.hpp"
#include "dkg/grid.hpp"

namespace dkg {

// Exact-in-space spectral flows on periodic grids; frequencies xi = pi k / L
// for signed k. Single-threaded FFTW with FFTW_ESTIMATE so results are
// reproducible bit for bit.

// psi(t0 + t) for the free Dirac equation -i gamma^mu d_mu psi + M psi = 0:
// symbol exp(-i t (g0 g^a xi_a + M g0)) applied mode by mode. With
// `discrete_symbol`, xi_a is replaced by the modified wavenumber of the
// 4th-order centered difference, (8 sin(xi h) - sin(2 xi h))/(6h), so the
// flow is the exact-in-time solution of the semi-discrete system and inverts
// a finite-difference evolution up to its time-integration error alone.
SpinorField dirac_free_flow(const SpinorField& psi0, double M, double t,
                            const GammaSet& gs, bool discrete_symbol = false);

// (u, u_t) at time offset t for -box u + m^2 u = 0 from data (u0, u1).
// `discrete_symbol` swaps |xi|^2 for the symbol of the 4th-order Laplacian,
// (30 - 32 cos(xi h) + 2 cos(2 xi h))/(12 h^2) summed over dimensions.
std::pair<ScalarField, ScalarField> wave_free_flow(const ScalarField& u0,
                                                   const ScalarField& u1,
                                                   double t, double m,
                                                   bool discrete_symbol = false);

// Zero-pad snapshot reinterpreted on a periodic grid with the same spacing
// (half-width n*h/2), for spectral back-evolution of compactly supported
// states.
template <class T>
Field<T> to_periodic(const Field<T>& f) {
    GridSpec g(f.grid.n, f.grid.n * f.grid.h() / 2.0, Boundary::Periodic);
    Field<T> out(g);
    out.data = f.data;
    return out;
}

}  // namespace dkg
