#include "dkg/structure.hpp"

#include <cmath>

#include "dkg/stencil.hpp"

namespace dkg {

namespace {

SpinorWindow mat_window(const SpinorWindow& w, const Mat4& m) {
    SpinorWindow out;
    out.dt = w.dt;
    out.t_center = w.t_center;
    for (const SpinorField& f : w.levels) {
        SpinorField g(f.grid);
        for (std::size_t id = 0; id < f.data.size(); ++id) g.data[id] = m * f.data[id];
        out.levels.push_back(std::move(g));
    }
    return out;
}

// Re(psi* m psi) per node per level (m Hermitian)
ScalarWindow bilinear_window(const SpinorWindow& w, const Mat4& m) {
    ScalarWindow out;
    out.dt = w.dt;
    out.t_center = w.t_center;
    for (const SpinorField& f : w.levels) {
        ScalarField g(f.grid);
        for (std::size_t id = 0; id < f.data.size(); ++id)
            g.data[id] = std::real(f.data[id].dot(m * f.data[id]));
        out.levels.push_back(std::move(g));
    }
    return out;
}

Mask joint_core(const SpinorWindow& psi, const ScalarWindow& phi) {
    ScalarField mag = abs_field(psi.at(0));
    const ScalarField& p = phi.at(0);
    for (std::size_t id = 0; id < mag.data.size(); ++id)
        mag.data[id] += std::abs(p.data[id]);
    return support_core(mag, erosion_cells(mag.grid.h()));
}

}  // namespace

NTerms n_terms(const SpinorWindow& psi, const ScalarWindow& phi, const GammaSet& gs) {
    const GridSpec& g = psi.grid();
    NTerms out{CField(g), CField(g), CField(g), CField(g)};

    // i gamma^mu d_mu psi = -(-i gamma^mu d_mu psi)
    SpinorField dpsi = compose_dirac(psi, gs, 0.0);
    for (std::size_t id = 0; id < g.size(); ++id) {
        const Spinor& v = psi.at(0).data[id];
        double p = phi.at(0).data[id];
        Spinor arg = -dpsi.data[id] + v;
        out.N1.data[id] = -p * v.dot(gs.gamma[0] * arg);
        Spinor arg_on = 2.0 * v - iu * p * (gs.gamma5 * v);
        out.N1_onshell.data[id] = -p * v.dot(gs.gamma[0] * arg_on);
        out.N2.data[id] = -p * p * v.dot(gs.upsilon * v);
    }

    for (int a = 1; a <= 3; ++a) {
        SpinorWindow wa = mat_window(psi, Mat4(iu * gs.gamma5 * gs.gamma[a]));
        out.N3 += null_form_Qab(psi, wa, 0, a);
    }
    for (int a = 1; a <= 3; ++a) {
        SpinorWindow fa = mat_window(psi, Mat4(gs.gamma[0] * gs.gamma[a]));
        for (int b = 1; b < a; ++b) {
            SpinorWindow wb = mat_window(psi, Mat4(iu * gs.gamma5 * gs.gamma[b]));
            out.N3 += null_form_Qab(fa, wb, a, b);
        }
    }
    return out;
}

double hidden_wave_residual(const SpinorWindow& psi, const ScalarWindow& phi,
                            const GammaSet& gs) {
    const GridSpec& g = psi.grid();
    ScalarWindow upsw = bilinear_window(psi, gs.upsilon);
    ScalarWindow tilde;
    tilde.dt = phi.dt;
    tilde.t_center = phi.t_center;
    int pc = phi.center();
    for (int l = pc - 2; l <= pc + 2; ++l) {
        ScalarField f = phi.levels[l];
        const ScalarField& u = upsw.levels[upsw.center() + (l - pc)];
        for (std::size_t id = 0; id < g.size(); ++id) f.data[id] += 0.25 * u.data[id];
        tilde.levels.push_back(std::move(f));
    }
    ScalarField box = compose_box(tilde, 0.0);

    NTerms nt = n_terms(psi, phi, gs);
    CField residual(g);
    for (std::size_t id = 0; id < g.size(); ++id)
        residual.data[id] = cplx(box.data[id], 0.0) -
                            0.5 * (nt.N1.data[id] + nt.N2.data[id] + nt.N3.data[id]);
    return max_abs_masked(residual, joint_core(psi, phi));
}

double psi_upsilon_expansion_residual(const SpinorWindow& psi,
                                      const ScalarWindow& phi, const GammaSet& gs) {
    const GridSpec& g = psi.grid();
    SpinorWindow upsi = mat_window(psi, gs.upsilon);
    CField q0 = null_form_Q0(psi, upsi);
    NTerms nt = n_terms(psi, phi, gs);
    CField residual(g);
    for (std::size_t id = 0; id < g.size(); ++id) {
        cplx lhs = psi.at(0).data[id].dot(gs.upsilon * psi.at(0).data[id]);
        residual.data[id] = lhs - q0.data[id] - nt.N1.data[id] - nt.N3.data[id];
    }
    return max_abs_masked(residual, joint_core(psi, phi));
}

double box_psi_upsilon_residual(const SpinorWindow& psi, const ScalarWindow& phi,
                                const GammaSet& gs) {
    const GridSpec& g = psi.grid();
    ScalarWindow s = bilinear_window(psi, gs.upsilon);
    ScalarField box = compose_box(s, 0.0);
    SpinorWindow upsi = mat_window(psi, gs.upsilon);
    CField q0 = null_form_Q0(psi, upsi);
    NTerms nt = n_terms(psi, phi, gs);
    CField residual(g);
    for (std::size_t id = 0; id < g.size(); ++id)
        residual.data[id] = cplx(box.data[id], 0.0) -
                            (-2.0 * s.at(0).data[id] - 2.0 * q0.data[id] +
                             2.0 * nt.N2.data[id]);
    return max_abs_masked(residual, joint_core(psi, phi));
}

AuxResiduals aux_reconstruction_residuals(const SpinorWindow& psi,
                                          const SpinorWindow& aux,
                                          const GammaSet& gs) {
    const GridSpec& g = psi.grid();
    AuxResiduals out{};

    SpinorField rec = compose_dirac(aux, gs, 0.0);
    SpinorField diff(g);
    for (std::size_t id = 0; id < g.size(); ++id)
        diff.data[id] = rec.data[id] - psi.at(0).data[id];
    Mask core = support_core(abs_field(psi.at(0)), erosion_cells(g.h()));
    out.reconstruction = max_abs_masked(diff, core);

    RadialWeights rw = radial_weights(g, psi.t_center);
    SpinorField gpsi[3] = {apply(OpKind::G1, aux, gs).at(0),
                           apply(OpKind::G2, aux, gs).at(0),
                           apply(OpKind::G3, aux, gs).at(0)};
    Mat4 alpha[3] = {gs.alpha(1), gs.alpha(2), gs.alpha(3)};
    SpinorField mdiff(g);
    Mask mask = core;
    const double h = g.h();
    for (std::size_t id = 0; id < g.size(); ++id) {
        if (rw.r.data[id] < h) {
            mask[id] = 0;
            continue;
        }
        Mat4 proj = Mat4::Identity();
        for (int a = 0; a < 3; ++a) proj -= rw.omega[a].data[id] * alpha[a];
        Spinor minus = proj * psi.at(0).data[id];
        Spinor sum = Spinor::Zero();
        for (int b = 0; b < 3; ++b) sum += gs.gamma[b + 1] * gpsi[b].data[id];
        mdiff.data[id] = minus - (-iu) * (proj * sum);
    }
    out.minus_representation = max_abs_masked(mdiff, mask);
    return out;
}

double radial_derivative_bound_ratio(const SpinorWindow& psi,
                                     const ScalarWindow& phi,
                                     const CaseConfig& c, const GammaSet& gs) {
    const GridSpec& g = psi.grid();
    RadialWeights rw = radial_weights(g, psi.t_center);
    Mat4 alpha[3] = {gs.alpha(1), gs.alpha(2), gs.alpha(3)};

    SpinorField minus(g);
    for (std::size_t id = 0; id < g.size(); ++id) {
        Mat4 proj = Mat4::Identity();
        for (int a = 0; a < 3; ++a) proj -= rw.omega[a].data[id] * alpha[a];
        minus.data[id] = proj * psi.at(0).data[id];
    }
    SpinorField dminus[3] = {dx(minus, 0), dx(minus, 1), dx(minus, 2)};

    ScalarField hat_sum(g);
    std::vector<OpKind> hats = zhat_ops();
    hats.push_back(OpKind::S);
    for (OpKind op : hats) {
        SpinorField v = apply(op, psi, gs).at(0);
        for (std::size_t id = 0; id < g.size(); ++id)
            hat_sum.data[id] += v.data[id].norm();
    }

    Mask mask = support_core(abs_field(psi.at(0)), erosion_cells(g.h()));
    const double h = g.h();
    const double t = psi.t_center;
    double ratio = 0.0;
    for (std::size_t id = 0; id < g.size(); ++id) {
        if (!mask[id]) continue;
        double r = rw.r.data[id];
        if (r < h || t - r < 1.0) continue;
        Spinor dr = Spinor::Zero();
        for (int a = 0; a < 3; ++a) dr += rw.omega[a].data[id] * dminus[a].data[id];
        double lhs = dr.norm();
        Spinor G = phi.at(0).data[id] * (c.V * psi.at(0).data[id]);
        double rhs = (hat_sum.data[id] + psi.at(0).data[id].norm()) / (t + r) + G.norm();
        if (rhs < 1e-300) continue;
        ratio = std::max(ratio, lhs / rhs);
    }
    return ratio;
}

}  // namespace dkg
