#include <doctest.h>

#include <cmath>

#include "dkg/free_flow.hpp"
#include "dkg/solver.hpp"
#include "dkg/stencil.hpp"
#include "test_util.hpp"

using namespace dkg;
using namespace dkg::testutil;

TEST_CASE("case table matches the coupling matrices") {
    GammaSet gs = build_gamma_set();
    CaseConfig c1 = make_case(Case::I, gs);
    CHECK(c1.M == 0.0);
    CHECK((c1.V - Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((c1.U - gs.gamma[0]).cwiseAbs().maxCoeff() == 0.0);

    CaseConfig c2 = make_case(Case::II, gs);
    CHECK(c2.M == 0.0);
    CHECK((c2.V - iu * gs.gamma5).cwiseAbs().maxCoeff() == 0.0);
    CHECK((c2.U - iu * gs.gamma[0] * gs.gamma5).cwiseAbs().maxCoeff() == 0.0);

    CaseConfig c3 = make_case(Case::III, gs);
    CHECK(c3.M == 1.0);
    CHECK((c3.V - c2.V).cwiseAbs().maxCoeff() == 0.0);
    CHECK((c3.U - c2.U).cwiseAbs().maxCoeff() == 0.0);

    CaseConfig c4 = make_case(Case::IV, gs);
    CHECK(c4.M == 1.0);
    CHECK((c4.V - c1.V).cwiseAbs().maxCoeff() == 0.0);
    CHECK((c4.U - c1.U).cwiseAbs().maxCoeff() == 0.0);

    for (Case c : {Case::I, Case::II, Case::III, Case::IV}) {
        CHECK(parse_case(case_name(c)) == c);
        // U must be Hermitian so the wave source psi* U psi is real
        CaseConfig cc = make_case(c, gs);
        CHECK((cc.U - cc.U.adjoint().eval()).cwiseAbs().maxCoeff() <= 1e-15);
    }
    CHECK_THROWS(parse_case("V"));
}

TEST_CASE("bump profile: compact support, smooth peak") {
    CHECK(bump_profile(0.0, 0.8) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bump_profile(0.8, 0.8) == 0.0);
    CHECK(bump_profile(1.5, 0.8) == 0.0);
    CHECK(bump_profile(0.4, 0.8) > 0.0);
    CHECK(bump_profile(0.4, 0.8) < 1.0);
}

TEST_CASE("initial state scales linearly with epsilon") {
    GridSpec g(25, 2.0, Boundary::ZeroPad);
    GammaSet gs = build_gamma_set();
    InitialData d1{1e-3, 0.8}, d2{2e-3, 0.8};
    State s1 = make_initial_state(g, d1, true, gs);
    State s2 = make_initial_state(g, d2, true, gs);
    CHECK(s1.t == 2.0);
    CHECK(s1.has_aux);
    CHECK(max_abs(s1.phi) > 0.0);
    double r = max_abs(s2.phi) / max_abs(s1.phi);
    CHECK(r == doctest::Approx(2.0).epsilon(1e-12));
    r = max_abs(s2.psi) / max_abs(s1.psi);
    CHECK(r == doctest::Approx(2.0).epsilon(1e-12));
    // aux data: Psi(2) = 0, dt Psi(2) = i g0 psi(2)
    CHECK(max_abs(s1.aux) == 0.0);
    CHECK(max_abs(s1.aux_t) == doctest::Approx(max_abs(s1.psi)).epsilon(1e-12));
}

TEST_CASE("run config validation") {
    GammaSet gs = build_gamma_set();
    RunConfig cfg;
    cfg.grid = GridSpec(33, 4.0, Boundary::ZeroPad);
    cfg.cas = make_case(Case::I, gs);
    cfg.dt = 0.05;
    cfg.t_end = 4.0;
    cfg.r0 = 0.8;
    CHECK_NOTHROW(cfg.validate());
    RunConfig bad_cfl = cfg;
    bad_cfl.dt = 0.2;  // h = 0.25, limit 0.125
    CHECK_THROWS(bad_cfl.validate());
    RunConfig bad_box = cfg;
    bad_box.t_end = 8.0;  // cone needs L >= 0.8 + 6 + 4h
    CHECK_THROWS(bad_box.validate());
}

TEST_CASE("dirac_dt on a constant spinor reduces to the mass term") {
    GridSpec g(17, 1.0, Boundary::Periodic);
    GammaSet gs = build_gamma_set();
    CaseConfig c = make_case(Case::III, gs);
    State s;
    s.t = 2.0;
    s.psi = SpinorField(g);
    s.phi = ScalarField(g);
    s.phi_t = ScalarField(g);
    Spinor v;
    v << 1.0, cplx(0.0, 0.5), -0.25, cplx(0.3, -0.1);
    for (auto& p : s.psi.data) p = v;
    SpinorField d = dirac_dt(s, c, gs);
    Spinor expect = -iu * gs.gamma[0] * (c.M * v);
    double err = 0.0;
    for (const auto& p : d.data) err = std::max(err, (p - expect).cwiseAbs().maxCoeff());
    CHECK(err <= 1e-13);
    // zero field stays zero through a full RK4 step
    for (auto& p : s.psi.data) p.setZero();
    State z = step_rk4(s, 0.01, c, gs);
    CHECK(max_abs(z.psi) == 0.0);
    CHECK(max_abs(z.phi) == 0.0);
    CHECK(z.t == doctest::Approx(2.01).epsilon(1e-14));
}

TEST_CASE("wave_dt recovers the Klein-Gordon right-hand side") {
    GridSpec g(33, 2.0, Boundary::ZeroPad);
    GammaSet gs = build_gamma_set();
    CaseConfig c = make_case(Case::I, gs);
    c.m = 1.0;
    State s;
    s.t = 2.0;
    s.psi = SpinorField(g);
    for (auto& p : s.psi.data) p.setZero();
    s.phi = fill_scalar(g, 0.0, [](double, double x, double y, double z) {
        return test_bump(0.0, x, y, z);
    });
    s.phi_t = fill_scalar(g, 0.0, [](double, double, double, double) { return 0.3; });
    ScalarField dphi(g), dphit(g);
    wave_dt(s, c, gs, dphi, dphit);
    // dt phi = phi_t exactly
    ScalarField r1 = dphi - s.phi_t;
    CHECK(max_abs(r1) == 0.0);
    // dt phi_t = Lap phi - phi when the spinor source vanishes
    ScalarField expect = laplacian(s.phi) - s.phi;
    ScalarField r2 = dphit - expect;
    CHECK(max_abs(r2) <= 1e-12);
}

TEST_CASE("RK4 on the free Dirac mass rotation converges at 4th order") {
    GridSpec g(17, 1.0, Boundary::Periodic);
    GammaSet gs = build_gamma_set();
    CaseConfig c = make_case(Case::III, gs);
    State s;
    s.t = 0.0;
    s.psi = SpinorField(g);
    s.phi = ScalarField(g);
    s.phi_t = ScalarField(g);
    Spinor v;
    v << 1.0, cplx(0.2, 0.4), cplx(-0.3, 0.1), 0.5;
    for (auto& p : s.psi.data) p = v;
    // spatially constant: exact solution is exp(-i t g0 M) v
    double T = 0.5;
    auto evolve = [&](int steps) {
        State cur = s;
        double dt = T / steps;
        for (int k = 0; k < steps; ++k) cur = step_rk4(cur, dt, c, gs, false);
        // (g0)^2 = I, so exp(-i T M g0) = cos(TM) I - i sin(TM) g0
        Spinor exact = std::cos(T * c.M) * v - iu * std::sin(T * c.M) * (gs.gamma[0] * v);
        double err = 0.0;
        for (const auto& p : cur.psi.data)
            err = std::max(err, (p - exact).cwiseAbs().maxCoeff());
        return err;
    };
    double e1 = evolve(8), e2 = evolve(16);
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("spectral Dirac flow: constant mode mass rotation") {
    GridSpec g(32, 1.0, Boundary::Periodic);
    GammaSet gs = build_gamma_set();
    SpinorField psi0(g);
    Spinor v;
    v << 1.0, cplx(0.0, 0.5), -0.25, cplx(0.3, -0.1);
    for (auto& p : psi0.data) p = v;
    double t = 0.7, M = 1.0;
    SpinorField out = dirac_free_flow(psi0, M, t, gs);
    Spinor exact = std::cos(t) * v - iu * std::sin(t) * (gs.gamma[0] * v);
    double err = 0.0;
    for (const auto& p : out.data) err = std::max(err, (p - exact).cwiseAbs().maxCoeff());
    CHECK(err <= 1e-12);
}

TEST_CASE("spectral Dirac flow conserves the L2 norm") {
    GridSpec gz(33, 2.0, Boundary::ZeroPad);
    GammaSet gs = build_gamma_set();
    SpinorField psi0 = fill_spinor(gz, 0.0, [](double, double x, double y, double z) {
        Spinor v;
        v << 1.0, cplx(0.5, -0.3), cplx(-0.4, 0.2), cplx(0.3, 0.1);
        return Spinor(test_bump(0.0, x, y, z) * v);
    });
    SpinorField per = to_periodic(psi0);
    CHECK(per.grid.boundary == Boundary::Periodic);
    CHECK(per.grid.h() == doctest::Approx(gz.h()).epsilon(1e-14));
    double n0 = l2_norm(per);
    SpinorField fwd = dirac_free_flow(per, 1.0, 0.9, gs);
    CHECK(l2_norm(fwd) == doctest::Approx(n0).epsilon(1e-12));
    // and the flow inverts cleanly
    SpinorField back = dirac_free_flow(fwd, 1.0, -0.9, gs);
    SpinorField diff = back - per;
    CHECK(max_abs(diff) <= 1e-12 * max_abs(per));
}

TEST_CASE("spectral wave flow: single Fourier mode oscillates at |xi|") {
    GridSpec g(32, 1.0, Boundary::Periodic);
    double xi = M_PI * 2.0 / 1.0;  // mode k = 2, L = 1
    ScalarField u0 = fill_scalar(g, 0.0, [&](double, double x, double, double) {
        return std::cos(xi * x);
    });
    ScalarField v0(g);
    double t = 0.37;
    auto [u, ut] = wave_free_flow(u0, v0, t, 0.0);
    double err = 0.0, errt = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double x = g.coord(i);
        err = std::max(err, std::abs(u(i, 3, 5) - std::cos(xi * t) * std::cos(xi * x)));
        errt = std::max(errt,
                        std::abs(ut(i, 3, 5) + xi * std::sin(xi * t) * std::cos(xi * x)));
    }
    CHECK(err <= 1e-12);
    CHECK(errt <= 1e-11);
    // zero mode with m = 0 drifts linearly: u = u0 + t v0
    ScalarField c0(g), c1(g);
    for (auto& x : c0.data) x = 2.0;
    for (auto& x : c1.data) x = -0.5;
    auto [cu, cut] = wave_free_flow(c0, c1, t, 0.0);
    CHECK(cu(0, 0, 0) == doctest::Approx(2.0 - 0.5 * t).epsilon(1e-13));
    CHECK(cut(0, 0, 0) == doctest::Approx(-0.5).epsilon(1e-13));
}

TEST_CASE("coupled run emits windows and preserves smallness") {
    GridSpec g(33, 4.0, Boundary::ZeroPad);
    GammaSet gs = build_gamma_set();
    RunConfig cfg;
    cfg.grid = g;
    cfg.cas = make_case(Case::I, gs);
    cfg.dt = 0.05;
    cfg.t_end = 3.0;
    cfg.epsilon = 1e-3;
    cfg.cadence = 8;
    cfg.evolve_aux = true;
    cfg.validate();

    int n_windows = 0;
    double last_center = 0.0;
    State fin = run(cfg, gs, [&](const std::vector<State>& win) {
        REQUIRE(win.size() == 9);
        ++n_windows;
        last_center = win[4].t;
        SpinorWindow pw = psi_window(win);
        CHECK(pw.levels.size() == 9);
        CHECK(pw.t_center == doctest::Approx(win[4].t).epsilon(1e-13));
        CHECK(pw.dt == doctest::Approx(cfg.dt).epsilon(1e-14));
    });
    CHECK(n_windows >= 2);
    CHECK(last_center > 2.0);
    CHECK(fin.t == doctest::Approx(3.0).epsilon(1e-12));
    // small data stays small over a short run
    CHECK(max_abs(fin.psi) <= 10.0 * cfg.epsilon);
    CHECK(max_abs(fin.phi) <= 10.0 * cfg.epsilon);
    CHECK(fin.has_aux);
    CHECK(max_abs(fin.aux) > 0.0);
}
