#pragma once

#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "dkg/clifford.hpp"
#include "dkg/grid.hpp"
#include "dkg/stencil.hpp"

namespace dkg {

// First-order spacetime operators. Hat variants carry the constant matrix
// correction that makes them commute with the Dirac operator; they only act
// on spinor fields.
enum class OpKind {
    Dt, D1, D2, D3,
    S,
    H1, H2, H3,
    O12, O13, O23,
    Hhat1, Hhat2, Hhat3,
    Ohat12, Ohat13, Ohat23,
    G1, G2, G3,
};

std::string op_name(OpKind k);

// The ten Z operators (∂, S, H, Ω) and the eleven Γ operators (adds nothing
// beyond Z here since Γ = {∂, S, H, Ω} too; hat variants listed separately).
std::vector<OpKind> z_ops();
std::vector<OpKind> gamma_ops();
std::vector<OpKind> zhat_ops();

// Uniformly spaced time levels of one lattice field, odd count, centered at
// t_center. Each operator application consumes two levels per side.
template <class T>
struct TimeWindow {
    std::vector<Field<T>> levels;
    double t_center = 0.0;
    double dt = 0.0;

    int center() const { return static_cast<int>(levels.size()) / 2; }
    const Field<T>& at(int off) const { return levels[center() + off]; }
    const GridSpec& grid() const { return levels.front().grid; }
    double level_time(int l) const { return t_center + (l - center()) * dt; }
};

using ScalarWindow = TimeWindow<double>;
using CWindow = TimeWindow<cplx>;
using SpinorWindow = TimeWindow<Spinor>;

namespace detail {

// 4th-order centered first/second time derivative at level l (needs l +- 2).
template <class T>
Field<T> dt_at(const TimeWindow<T>& w, int l) {
    Field<T> out(w.grid());
    const double c = 1.0 / (12.0 * w.dt);
    for (std::size_t id = 0; id < out.data.size(); ++id)
        out.data[id] = c * (w.levels[l - 2].data[id] - w.levels[l + 2].data[id] +
                            8.0 * (w.levels[l + 1].data[id] - w.levels[l - 1].data[id]));
    return out;
}

template <class T>
Field<T> dtt_at(const TimeWindow<T>& w, int l) {
    Field<T> out(w.grid());
    const double c = 1.0 / (12.0 * w.dt * w.dt);
    for (std::size_t id = 0; id < out.data.size(); ++id)
        out.data[id] = c * (-w.levels[l - 2].data[id] - w.levels[l + 2].data[id] +
                            16.0 * (w.levels[l + 1].data[id] + w.levels[l - 1].data[id]) -
                            30.0 * w.levels[l].data[id]);
    return out;
}

template <class T>
void coeff_axpy(Field<T>& acc, const ScalarField& coeff, const Field<T>& f) {
    for (std::size_t id = 0; id < acc.data.size(); ++id)
        acc.data[id] += coeff.data[id] * f.data[id];
}

// Apply one operator to a single level; spatial derivatives on the level,
// time derivative from the surrounding five levels.
template <class T>
Field<T> apply_at(OpKind op, const TimeWindow<T>& w, int l, const GammaSet& gs) {
    const GridSpec& g = w.grid();
    const double t = w.level_time(l);
    const Field<T>& f = w.levels[l];

    auto coord_field = [&](int axis) {
        ScalarField c(g);
        const int n = g.n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    c(i, j, k) = g.coord(axis == 0 ? i : axis == 1 ? j : k);
        return c;
    };
    auto matrix_term = [&](const Mat4& m) {
        Field<T> out(g);
        if constexpr (std::is_same_v<T, Spinor>) {
            for (std::size_t id = 0; id < out.data.size(); ++id)
                out.data[id] = m * f.data[id];
        } else {
            (void)m;
            throw std::invalid_argument("matrix-corrected operator on non-spinor field");
        }
        return out;
    };

    switch (op) {
        case OpKind::Dt:
            return dt_at(w, l);
        case OpKind::D1:
            return dx(f, 0);
        case OpKind::D2:
            return dx(f, 1);
        case OpKind::D3:
            return dx(f, 2);
        case OpKind::S: {
            Field<T> out(g);
            Field<T> ft = dt_at(w, l);
            for (std::size_t id = 0; id < out.data.size(); ++id)
                out.data[id] = t * ft.data[id];
            for (int a = 0; a < 3; ++a) coeff_axpy(out, coord_field(a), dx(f, a));
            return out;
        }
        case OpKind::H1:
        case OpKind::H2:
        case OpKind::H3: {
            int a = static_cast<int>(op) - static_cast<int>(OpKind::H1);
            Field<T> out(g);
            Field<T> ft = dt_at(w, l);
            coeff_axpy(out, coord_field(a), ft);
            Field<T> fa = dx(f, a);
            for (std::size_t id = 0; id < out.data.size(); ++id)
                out.data[id] += t * fa.data[id];
            return out;
        }
        case OpKind::O12:
        case OpKind::O13:
        case OpKind::O23: {
            int a = op == OpKind::O23 ? 1 : 0;
            int b = op == OpKind::O12 ? 1 : 2;
            Field<T> out(g);
            coeff_axpy(out, coord_field(a), dx(f, b));
            Field<T> neg(g);
            coeff_axpy(neg, coord_field(b), dx(f, a));
            out -= neg;
            return out;
        }
        case OpKind::Hhat1:
        case OpKind::Hhat2:
        case OpKind::Hhat3: {
            int a = static_cast<int>(op) - static_cast<int>(OpKind::Hhat1);
            TimeWindow<T> sub = w;
            Field<T> out = apply_at(static_cast<OpKind>(static_cast<int>(OpKind::H1) + a), sub, l, gs);
            out -= matrix_term(Mat4(0.5 * gs.gamma[0] * gs.gamma[a + 1]));
            return out;
        }
        case OpKind::Ohat12:
        case OpKind::Ohat13:
        case OpKind::Ohat23: {
            int a = op == OpKind::Ohat23 ? 2 : 1;
            int b = op == OpKind::Ohat12 ? 2 : 3;
            OpKind base = op == OpKind::Ohat12   ? OpKind::O12
                          : op == OpKind::Ohat13 ? OpKind::O13
                                                 : OpKind::O23;
            Field<T> out = apply_at(base, w, l, gs);
            out -= matrix_term(Mat4(0.5 * gs.gamma[a] * gs.gamma[b]));
            return out;
        }
        case OpKind::G1:
        case OpKind::G2:
        case OpKind::G3: {
            int a = static_cast<int>(op) - static_cast<int>(OpKind::G1);
            Field<T> out = dx(f, a);
            RadialWeights rw = radial_weights(g, t);
            coeff_axpy(out, rw.omega[a], dt_at(w, l));
            return out;
        }
    }
    throw std::logic_error("apply_at: unreachable");
}

}  // namespace detail

// Apply `op` to every level the stencil can reach; the window shrinks by two
// levels per side.
template <class T>
TimeWindow<T> apply(OpKind op, const TimeWindow<T>& w, const GammaSet& gs) {
    const int count = static_cast<int>(w.levels.size());
    if (count < 5) throw std::invalid_argument("apply: window too short");
    TimeWindow<T> out;
    out.dt = w.dt;
    out.t_center = w.t_center;
    for (int l = 2; l < count - 2; ++l)
        out.levels.push_back(detail::apply_at(op, w, l, gs));
    return out;
}

template <class T>
TimeWindow<T> apply_multi(const std::vector<OpKind>& ops, TimeWindow<T> w,
                          const GammaSet& gs) {
    for (OpKind op : ops) w = apply(op, w, gs);
    return w;
}

namespace detail {

inline cplx pairing(double a, double b) { return cplx(a * b, 0.0); }
inline cplx pairing(const cplx& a, const cplx& b) { return std::conj(a) * b; }
inline cplx pairing(const Spinor& a, const Spinor& b) { return a.dot(b); }

}  // namespace detail

// Q0(f,g) = -(d0 f)* d0 g + sum_a (da f)* da g, conjugate pairing.
template <class Tf, class Tg>
CField null_form_Q0(const TimeWindow<Tf>& f, const TimeWindow<Tg>& g) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("null_form_Q0: grid mismatch");
    CField out(f.grid());
    Field<Tf> ft = detail::dt_at(f, f.center());
    Field<Tg> gt = detail::dt_at(g, g.center());
    for (std::size_t id = 0; id < out.data.size(); ++id)
        out.data[id] = -detail::pairing(ft.data[id], gt.data[id]);
    for (int a = 0; a < 3; ++a) {
        Field<Tf> fa = dx(f.at(0), a);
        Field<Tg> ga = dx(g.at(0), a);
        for (std::size_t id = 0; id < out.data.size(); ++id)
            out.data[id] += detail::pairing(fa.data[id], ga.data[id]);
    }
    return out;
}

// Q_{ab}(f,g) = (d_a f)* d_b g - (d_b f)* d_a g with lowered indices,
// a, b in 0..3 (0 is time).
template <class Tf, class Tg>
CField null_form_Qab(const TimeWindow<Tf>& f, const TimeWindow<Tg>& g, int alpha, int beta) {
    if (alpha == beta) throw std::invalid_argument("null_form_Qab: alpha == beta");
    auto deriv_f = [&](int mu) {
        return mu == 0 ? detail::dt_at(f, f.center()) : dx(f.at(0), mu - 1);
    };
    auto deriv_g = [&](int mu) {
        return mu == 0 ? detail::dt_at(g, g.center()) : dx(g.at(0), mu - 1);
    };
    Field<Tf> fa = deriv_f(alpha), fb = deriv_f(beta);
    Field<Tg> ga = deriv_g(alpha), gb = deriv_g(beta);
    CField out(f.grid());
    for (std::size_t id = 0; id < out.data.size(); ++id)
        out.data[id] = detail::pairing(fa.data[id], gb.data[id]) -
                       detail::pairing(fb.data[id], ga.data[id]);
    return out;
}

// -i gamma^mu d_mu psi + M psi at the window center.
SpinorField compose_dirac(const SpinorWindow& w, const GammaSet& gs, double M);

// -box u + m^2 u with box = -d_t^2 + Laplacian, at the window center.
template <class T>
Field<T> compose_box(const TimeWindow<T>& w, double m) {
    Field<T> out = detail::dtt_at(w, w.center());
    Field<T> lap = laplacian(w.at(0));
    out -= lap;
    if (m != 0.0) {
        for (std::size_t id = 0; id < out.data.size(); ++id)
            out.data[id] += m * m * w.at(0).data[id];
    }
    return out;
}

// Residual of the hyperboloidal rewrite of -box, evaluated on the support
// core away from the boundary; needs a 9-level window.
double dalembert_decomposition_residual(const ScalarWindow& w, const GammaSet& gs);

}  // namespace dkg
