#include <doctest.h>

#include <cmath>

#include "dkg/stencil.hpp"
#include "dkg/structure.hpp"
#include "test_util.hpp"

using namespace dkg;
using namespace dkg::testutil;

namespace {

SpinorFn generic_spinor(double scale) {
    return [scale](double t, double x, double y, double z) {
        double b = test_bump(t, x, y, z);
        double c = test_bump(0.3 * t + 0.4, y, z, x);
        Spinor v;
        v << cplx(b, 0.2 * c), cplx(0.5 * c, -0.3 * b), cplx(-0.4 * b, 0.1 * c),
            cplx(0.3 * c, 0.2 * b);
        return Spinor(scale * v);
    };
}

}  // namespace

TEST_CASE("n_terms vanish identically on zero fields") {
    GammaSet gs = build_gamma_set();
    GridSpec g(17, 2.0, Boundary::ZeroPad);
    SpinorWindow pw = spinor_window(g, 3.0, 0.02, 9,
                                    [](double, double, double, double) {
                                        return Spinor(Spinor::Zero());
                                    });
    ScalarWindow fw = scalar_window(g, 3.0, 0.02, 9,
                                    [](double, double, double, double) { return 0.0; });
    NTerms nt = n_terms(pw, fw, gs);
    CHECK(max_abs(nt.N1) == 0.0);
    CHECK(max_abs(nt.N1_onshell) == 0.0);
    CHECK(max_abs(nt.N2) == 0.0);
    CHECK(max_abs(nt.N3) == 0.0);
}

TEST_CASE("N1 and N2 carry the scalar factor, N3 does not") {
    GammaSet gs = build_gamma_set();
    GridSpec g(25, 2.0, Boundary::ZeroPad);
    SpinorWindow pw = spinor_window(g, 3.0, 0.02, 9, generic_spinor(1.0));
    ScalarWindow zero = scalar_window(g, 3.0, 0.02, 9,
                                      [](double, double, double, double) { return 0.0; });
    NTerms nt = n_terms(pw, zero, gs);
    CHECK(max_abs(nt.N1) == 0.0);
    CHECK(max_abs(nt.N1_onshell) == 0.0);
    CHECK(max_abs(nt.N2) == 0.0);
    CHECK(max_abs(nt.N3) > 0.0);

    // N1 is linear and N2 quadratic in the scalar field
    ScalarWindow one = scalar_window(g, 3.0, 0.02, 9,
                                     [](double, double, double, double) { return 1.0; });
    ScalarWindow two = scalar_window(g, 3.0, 0.02, 9,
                                     [](double, double, double, double) { return 2.0; });
    NTerms n_one = n_terms(pw, one, gs);
    NTerms n_two = n_terms(pw, two, gs);
    double m1 = max_abs(n_one.N1), m2 = max_abs(n_two.N1);
    CHECK(m2 == doctest::Approx(2.0 * m1).epsilon(1e-12));
    CHECK(max_abs(n_two.N2) == doctest::Approx(4.0 * max_abs(n_one.N2)).epsilon(1e-12));
    // N3 ignores the scalar entirely
    CField d = n_two.N3 - n_one.N3;
    CHECK(max_abs(d) == 0.0);
}

TEST_CASE("null-structure expansion of the Dirac quadratic is exact off shell") {
    // (gamma^mu d_mu psi)* Upsilon (gamma^nu d_nu psi) = Q0(psi, Ups psi) + N3
    // is multilinear in the eight derivative slots, so it holds pointwise for
    // the discrete derivatives of any window, up to rounding only.
    GammaSet gs = build_gamma_set();
    GridSpec g(25, 2.0, Boundary::ZeroPad);
    SpinorWindow pw = spinor_window(g, 3.0, 0.05, 9, generic_spinor(1.0));
    ScalarWindow fw = scalar_window(g, 3.0, 0.05, 9,
                                    [](double, double, double, double) { return 0.0; });

    // gamma^mu d_mu psi = i * (-i gamma^mu d_mu psi)
    SpinorField cd = compose_dirac(pw, gs, 0.0);
    SpinorWindow upsi;  // reuse Q0 for the quadratic form
    NTerms nt = n_terms(pw, fw, gs);
    SpinorWindow upw;
    upw.dt = pw.dt;
    upw.t_center = pw.t_center;
    for (const SpinorField& f : pw.levels) {
        SpinorField m(f.grid);
        for (std::size_t id = 0; id < f.data.size(); ++id)
            m.data[id] = gs.upsilon * f.data[id];
        upw.levels.push_back(std::move(m));
    }
    CField q0 = null_form_Q0(pw, upw);

    const GridSpec& cg = cd.grid;
    double err = 0.0, scale = 0.0;
    for (std::size_t id = 0; id < cg.size(); ++id) {
        cplx lhs = cd.data[id].dot(gs.upsilon * cd.data[id]);
        cplx rhs = q0.data[id] + nt.N3.data[id];
        err = std::max(err, std::abs(lhs - rhs));
        scale = std::max(scale, std::abs(lhs));
    }
    CHECK(scale > 0.0);
    CHECK(err <= 1e-12 * scale);
}

TEST_CASE("on-shell structure residuals shrink under refinement") {
    GammaSet gs = build_gamma_set();
    struct Res {
        double hidden, expansion, box_ups, rec, minus_rep;
    };
    auto residuals_at = [&](int n, double dt_frac, int cadence, int nsteps) {
        RunConfig cfg;
        cfg.grid = GridSpec(n, 4.0, Boundary::ZeroPad);
        cfg.cas = make_case(Case::III, gs);
        cfg.dt = dt_frac * cfg.grid.h();
        cfg.t_end = 2.0 + nsteps * cfg.dt;
        cfg.r0 = 1.2;
        cfg.cadence = cadence;
        cfg.evolve_aux = true;
        cfg.validate();
        Res r{};
        bool got = false;
        run(cfg, gs, [&](const std::vector<State>& win) {
            SpinorWindow pw = psi_window(win);
            ScalarWindow fw = phi_window(win);
            SpinorWindow aw = aux_window(win);
            r.hidden = hidden_wave_residual(pw, fw, gs);
            r.expansion = psi_upsilon_expansion_residual(pw, fw, gs);
            r.box_ups = box_psi_upsilon_residual(pw, fw, gs);
            AuxResiduals ar = aux_reconstruction_residuals(pw, aw, gs);
            r.rec = ar.reconstruction;
            r.minus_rep = ar.minus_representation;
            got = true;
        });
        REQUIRE(got);
        return r;
    };
    // all windows centered at t = 2.8; refine each residual along the axis
    // its truncation error lives on
    Res coarse = residuals_at(33, 0.4, 8, 12);
    Res fine_h = residuals_at(65, 0.4, 16, 20);   // h -> h/2, dt/h fixed
    Res fine_t = residuals_at(33, 0.2, 16, 24);   // dt -> dt/2, grid fixed

    // hidden-wave residual is dominated by time discretization: ~ dt^4
    CHECK(coarse.hidden / fine_t.hidden >= 8.0);
    // the rest are spatial-truncation limited
    CHECK(coarse.expansion / fine_h.expansion >= 4.0);
    CHECK(coarse.box_ups / fine_h.box_ups >= 2.0);
    CHECK(fine_h.rec < coarse.rec);
    CHECK(coarse.rec / fine_h.rec >= 2.0);
    CHECK(fine_h.minus_rep < 10.0 * coarse.minus_rep);  // stays controlled
}

TEST_CASE("radial derivative bound ratio is finite on a run window") {
    GammaSet gs = build_gamma_set();
    RunConfig cfg;
    cfg.grid = GridSpec(33, 4.0, Boundary::ZeroPad);
    cfg.cas = make_case(Case::III, gs);
    cfg.dt = 0.4 * cfg.grid.h();
    cfg.t_end = 2.0 + 12.0 * cfg.dt;
    cfg.cadence = 8;
    cfg.validate();
    double ratio = -1.0;
    run(cfg, gs, [&](const std::vector<State>& win) {
        ratio = radial_derivative_bound_ratio(psi_window(win), phi_window(win),
                                              cfg.cas, gs);
    });
    CHECK(ratio >= 0.0);
    CHECK(std::isfinite(ratio));
}
