#include "dkg/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dkg/stencil.hpp"

namespace dkg {

namespace {

double ghost_integrand(double tau, double delta) {
    return std::pow(1.0 + tau * tau, -(1.0 + 2.0 * delta) / 2.0);
}

// integral_T^infinity <tau>^{-1-2delta} dtau for T >= 10, by the binomial
// series of (1 + tau^-2)^{-p/2}.
double ghost_tail(double T, double delta) {
    double p = 1.0 + 2.0 * delta;
    double sum = 0.0;
    double coeff = 1.0;  // binom(-p/2, k)
    for (int k = 0; k < 30; ++k) {
        double term = coeff * std::pow(T, -(2.0 * delta + 2.0 * k)) / (2.0 * delta + 2.0 * k);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        coeff *= (-p / 2.0 - k) / (k + 1.0);
    }
    return sum;
}

}  // namespace

GhostProfile::GhostProfile(double delta_, double s_min_, double s_max_, int points)
    : delta(delta_), s_min(s_min_), s_max(s_max_) {
    if (s_min > -10.0) throw std::invalid_argument("GhostProfile: s_min must be <= -10");
    table.resize(points);
    ds = (s_max - s_min) / (points - 1);
    table[0] = ghost_tail(-s_min, delta);
    for (int i = 1; i < points; ++i) {
        double a = s_min + (i - 1) * ds, b = s_min + i * ds;
        double mid = 0.5 * (a + b);
        table[i] = table[i - 1] + ds / 6.0 * (ghost_integrand(a, delta) +
                                              4.0 * ghost_integrand(mid, delta) +
                                              ghost_integrand(b, delta));
    }
}

double GhostProfile::q(double s) const {
    if (s <= s_min) return ghost_tail(-s, delta);
    if (s >= s_max) return table.back();
    double u = (s - s_min) / ds;
    int i = static_cast<int>(u);
    double f = u - i;
    int n = static_cast<int>(table.size());
    auto at = [&](int j) { return table[std::clamp(j, 0, n - 1)]; };
    double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    // Catmull-Rom
    return p1 + 0.5 * f * (p2 - p0 + f * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                          f * (3.0 * (p1 - p2) + p3 - p0)));
}

double ghost_increment(const SpinorField& psi, double t, double delta,
                       const GammaSet& gs) {
    const GridSpec& g = psi.grid;
    RadialWeights rw = radial_weights(g, t);
    Mat4 alpha[3] = {gs.alpha(1), gs.alpha(2), gs.alpha(3)};
    ScalarField integrand(g);
    for (std::size_t id = 0; id < g.size(); ++id) {
        Mat4 proj = Mat4::Identity();
        for (int a = 0; a < 3; ++a) proj -= rw.omega[a].data[id] * alpha[a];
        Spinor minus = proj * psi.data[id];
        integrand.data[id] = minus.squaredNorm() *
                             std::pow(rw.jb_tmr.data[id], -1.0 - 2.0 * delta);
    }
    return integrate(integrand);
}

double ghost_identity_residual(const SpinorWindow& psi, const ScalarWindow& phi,
                               const CaseConfig& c, const GammaSet& gs,
                               double delta) {
    const GridSpec& g = psi.grid();
    GhostProfile prof(delta, -60.0, 60.0);
    Mat4 alpha[3] = {gs.alpha(1), gs.alpha(2), gs.alpha(3)};

    // e^q |psi|^2 over five levels for the time derivative
    ScalarWindow dens;
    dens.dt = psi.dt;
    dens.t_center = psi.t_center;
    int pc = psi.center();
    for (int l = pc - 2; l <= pc + 2; ++l) {
        double t = psi.level_time(l);
        RadialWeights rw = radial_weights(g, t);
        ScalarField d(g);
        for (std::size_t id = 0; id < g.size(); ++id)
            d.data[id] = std::exp(prof.q(rw.r.data[id] - t)) *
                         psi.levels[l].data[id].squaredNorm();
        dens.levels.push_back(d);
    }
    ScalarField d0 = detail::dt_at(dens, 2);

    double t = psi.t_center;
    RadialWeights rw = radial_weights(g, t);
    ScalarField eq(g);
    for (std::size_t id = 0; id < g.size(); ++id)
        eq.data[id] = std::exp(prof.q(rw.r.data[id] - t));

    ScalarField divflux(g);
    for (int a = 0; a < 3; ++a) {
        ScalarField fa(g);
        for (std::size_t id = 0; id < g.size(); ++id)
            fa.data[id] = eq.data[id] *
                          std::real(psi.at(0).data[id].dot(alpha[a] * psi.at(0).data[id]));
        divflux += dx(fa, a);
    }

    ScalarField residual(g);
    for (std::size_t id = 0; id < g.size(); ++id) {
        Mat4 proj = Mat4::Identity();
        for (int a = 0; a < 3; ++a) proj -= rw.omega[a].data[id] * alpha[a];
        Spinor minus = proj * psi.at(0).data[id];
        double sink = 0.5 * eq.data[id] * minus.squaredNorm() *
                      std::pow(rw.jb_tmr.data[id], -1.0 - 2.0 * delta);
        Spinor G = phi.at(0).data[id] * (c.V * psi.at(0).data[id]);
        double rhs = -2.0 * eq.data[id] *
                     std::imag(psi.at(0).data[id].dot(gs.gamma[0] * G));
        residual.data[id] = d0.data[id] + divflux.data[id] + sink - rhs;
    }
    Mask mask = support_core(abs_field(psi.at(0)), erosion_cells(psi.grid().h()));
    return max_abs_masked(residual, mask);
}

std::pair<double, double> wave_energies(const ScalarWindow& w, const GammaSet& gs) {
    const GridSpec& g = w.grid();
    ScalarField ut = detail::dt_at(w, w.center());
    ScalarField e(g);
    for (std::size_t id = 0; id < g.size(); ++id)
        e.data[id] = ut.data[id] * ut.data[id];
    for (int a = 0; a < 3; ++a) {
        ScalarField ua = dx(w.at(0), a);
        for (std::size_t id = 0; id < g.size(); ++id)
            e.data[id] += ua.data[id] * ua.data[id];
    }
    double E = integrate(e);

    ScalarField f(g);
    for (std::size_t id = 0; id < g.size(); ++id)
        f.data[id] = w.at(0).data[id] * w.at(0).data[id];
    auto add_sq = [&](OpKind op) {
        ScalarField v = apply(op, w, gs).at(0);
        for (std::size_t id = 0; id < g.size(); ++id)
            f.data[id] += v.data[id] * v.data[id];
    };
    add_sq(OpKind::S);
    add_sq(OpKind::O12);
    add_sq(OpKind::O13);
    add_sq(OpKind::O23);
    add_sq(OpKind::H1);
    add_sq(OpKind::H2);
    add_sq(OpKind::H3);
    return {E, integrate(f)};
}

namespace {

void require_support_in_K(const ScalarWindow& w) {
    const GridSpec& g = w.grid();
    RadialWeights rw = radial_weights(g, w.t_center);
    ScalarField inside(g), outside(g);
    for (std::size_t id = 0; id < g.size(); ++id) {
        double u2 = w.at(0).data[id] * w.at(0).data[id];
        if (rw.r.data[id] + 1.0 <= w.t_center)
            inside.data[id] = u2;
        else
            outside.data[id] = u2;
    }
    double out = integrate(outside), total = out + integrate(inside);
    if (total > 0.0 && out > 1e-10 * total)
        throw std::runtime_error("weighted_conformal: field mass outside K = {r+1 <= t}");
}

}  // namespace

std::pair<double, double> weighted_conformal(const ScalarWindow& w, const GammaSet& gs) {
    require_support_in_K(w);
    const GridSpec& g = w.grid();
    const double t = w.t_center;
    RadialWeights rw = radial_weights(g, t);
    auto wgt = [&](std::size_t id) {
        double d = rw.tmr.data[id];
        return d > 0.5 ? 1.0 / d : 0.0;
    };

    ScalarField ut = detail::dt_at(w, w.center());
    ScalarField grad[3] = {dx(w.at(0), 0), dx(w.at(0), 1), dx(w.at(0), 2)};

    ScalarField def_form(g);
    for (std::size_t id = 0; id < g.size(); ++id) {
        double r = rw.r.data[id];
        double du2 = ut.data[id] * ut.data[id];
        double ur = 0.0;
        for (int a = 0; a < 3; ++a) {
            du2 += grad[a].data[id] * grad[a].data[id];
            ur += rw.omega[a].data[id] * grad[a].data[id];
        }
        double u = w.at(0).data[id];
        double v = 0.5 * ((r * r + t * t) * du2 + 4.0 * r * t * ut.data[id] * ur) +
                   2.0 * t * u * ut.data[id] - u * u;
        def_form.data[id] = v * wgt(id) - r * u * u * wgt(id) * wgt(id);
    }

    ScalarField su = apply(OpKind::S, w, gs).at(0);
    ScalarField hu[3] = {apply(OpKind::H1, w, gs).at(0), apply(OpKind::H2, w, gs).at(0),
                         apply(OpKind::H3, w, gs).at(0)};
    ScalarField ou[3] = {apply(OpKind::O12, w, gs).at(0), apply(OpKind::O13, w, gs).at(0),
                         apply(OpKind::O23, w, gs).at(0)};
    ScalarField id_form(g);
    for (std::size_t id = 0; id < g.size(); ++id) {
        double u = w.at(0).data[id];
        double v = (su.data[id] + 2.0 * u) * (su.data[id] + 2.0 * u);
        for (int a = 0; a < 3; ++a)
            v += hu[a].data[id] * hu[a].data[id] + ou[a].data[id] * ou[a].data[id];
        id_form.data[id] = 0.5 * v * wgt(id);
    }
    return {integrate(def_form), integrate(id_form)};
}

double econ_lower_bound(const ScalarWindow& w) {
    const GridSpec& g = w.grid();
    RadialWeights rw = radial_weights(g, w.t_center);
    ScalarField f(g);
    for (std::size_t id = 0; id < g.size(); ++id) {
        double d = rw.tmr.data[id];
        f.data[id] = d > 0.5 ? w.at(0).data[id] * w.at(0).data[id] / d : 0.0;
    }
    return integrate(f);
}

std::pair<double, double> klainerman_sobolev_sides(const ScalarWindow& w,
                                                   const GammaSet& gs, int order) {
    const GridSpec& g = w.grid();
    RadialWeights rw = radial_weights(g, w.t_center);
    double lhs = 0.0;
    for (std::size_t id = 0; id < g.size(); ++id)
        lhs = std::max(lhs, rw.jb_tpr.data[id] * std::sqrt(rw.jb_tmr.data[id]) *
                                std::abs(w.at(0).data[id]));

    double rhs = l2_norm(w.at(0));
    auto ops = gamma_ops();
    if (order >= 1)
        for (OpKind op : ops) rhs += op_l2(w, {op}, gs);
    if (order >= 2)
        for (OpKind op1 : ops)
            for (OpKind op2 : ops) rhs += op_l2(w, {op1, op2}, gs);
    return {lhs, rhs};
}

double hardy_ratio(const ScalarWindow& w) {
    const GridSpec& g = w.grid();
    RadialWeights rw = radial_weights(g, w.t_center);
    ScalarField num(g), den(g);
    ScalarField grad[3] = {dx(w.at(0), 0), dx(w.at(0), 1), dx(w.at(0), 2)};
    for (std::size_t id = 0; id < g.size(); ++id) {
        double d = rw.tmr.data[id];
        double u = w.at(0).data[id];
        num.data[id] = d > 0.5 ? u * u / (d * d) : 0.0;
        double ur = 0.0;
        for (int a = 0; a < 3; ++a) ur += rw.omega[a].data[id] * grad[a].data[id];
        den.data[id] = ur * ur;
    }
    double dn = std::sqrt(integrate(den));
    if (dn == 0.0) throw std::invalid_argument("hardy_ratio: zero radial derivative");
    return std::sqrt(integrate(num)) / dn;
}

namespace {

template <class T>
std::vector<double> weighted_grad_norms(const Field<T>& f, int kmax) {
    const GridSpec& g = f.grid;
    std::vector<double> out;
    std::vector<Field<T>> level = {f};  // all k-th order derivatives
    for (int k = 0; k <= kmax; ++k) {
        ScalarField mag2(g);
        for (const Field<T>& d : level)
            for (std::size_t id = 0; id < g.size(); ++id) {
                double a = detail::abs_value(d.data[id]);
                mag2.data[id] += a * a;
            }
        ScalarField integrand(g);
        const int n = g.n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int kk = 0; kk < n; ++kk) {
                    double x = g.coord(i), y = g.coord(j), z = g.coord(kk);
                    double r = std::sqrt(x * x + y * y + z * z);
                    double wt = std::log(2.0 + r) * std::pow(jbracket(r), k + 1.5);
                    integrand(i, j, kk) = wt * wt * mag2(i, j, kk);
                }
        out.push_back(std::sqrt(integrate(integrand)));

        if (k < kmax) {
            std::vector<Field<T>> next;
            for (const Field<T>& d : level)
                for (int a = 0; a < 3; ++a) next.push_back(dx(d, a));
            level = std::move(next);
        }
    }
    return out;
}

}  // namespace

WeightedNormReport initial_norms(const State& s0, int kmax) {
    WeightedNormReport r;
    r.psi_norms = weighted_grad_norms(s0.psi, kmax);
    r.phi_norms = weighted_grad_norms(s0.phi, kmax);
    r.phi_t_norms = weighted_grad_norms(s0.phi_t, kmax);
    return r;
}

}  // namespace dkg
