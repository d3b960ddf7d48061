#include "dkg/vector_fields.hpp"

namespace dkg {

std::string op_name(OpKind k) {
    switch (k) {
        case OpKind::Dt: return "dt";
        case OpKind::D1: return "d1";
        case OpKind::D2: return "d2";
        case OpKind::D3: return "d3";
        case OpKind::S: return "S";
        case OpKind::H1: return "H1";
        case OpKind::H2: return "H2";
        case OpKind::H3: return "H3";
        case OpKind::O12: return "O12";
        case OpKind::O13: return "O13";
        case OpKind::O23: return "O23";
        case OpKind::Hhat1: return "Hhat1";
        case OpKind::Hhat2: return "Hhat2";
        case OpKind::Hhat3: return "Hhat3";
        case OpKind::Ohat12: return "Ohat12";
        case OpKind::Ohat13: return "Ohat13";
        case OpKind::Ohat23: return "Ohat23";
        case OpKind::G1: return "G1";
        case OpKind::G2: return "G2";
        case OpKind::G3: return "G3";
    }
    return "?";
}

std::vector<OpKind> z_ops() {
    return {OpKind::Dt, OpKind::D1, OpKind::D2, OpKind::D3,
            OpKind::H1, OpKind::H2, OpKind::H3,
            OpKind::O12, OpKind::O13, OpKind::O23};
}

std::vector<OpKind> gamma_ops() {
    auto v = z_ops();
    v.push_back(OpKind::S);
    return v;
}

std::vector<OpKind> zhat_ops() {
    return {OpKind::Dt, OpKind::D1, OpKind::D2, OpKind::D3,
            OpKind::Hhat1, OpKind::Hhat2, OpKind::Hhat3,
            OpKind::Ohat12, OpKind::Ohat13, OpKind::Ohat23};
}

SpinorField compose_dirac(const SpinorWindow& w, const GammaSet& gs, double M) {
    SpinorField out(w.grid());
    SpinorField pt = detail::dt_at(w, w.center());
    Mat4 g0 = gs.gamma[0];
    for (std::size_t id = 0; id < out.data.size(); ++id)
        out.data[id] = -iu * (g0 * pt.data[id]) + M * w.at(0).data[id];
    for (int a = 0; a < 3; ++a) {
        SpinorField pa = dx(w.at(0), a);
        Mat4 ga = gs.gamma[a + 1];
        for (std::size_t id = 0; id < out.data.size(); ++id)
            out.data[id] += -iu * (ga * pa.data[id]);
    }
    return out;
}

double dalembert_decomposition_residual(const ScalarWindow& w, const GammaSet& gs) {
    if (w.levels.size() < 9)
        throw std::invalid_argument("dalembert_decomposition_residual: 9-level window required");
    const GridSpec& g = w.grid();
    const double t = w.t_center;
    if (t <= 0.0) throw std::invalid_argument("dalembert_decomposition_residual: t must be positive");

    // five-level sub-window around the center for second time derivatives
    ScalarWindow core;
    core.dt = w.dt;
    core.t_center = w.t_center;
    int c = w.center();
    for (int l = c - 2; l <= c + 2; ++l) core.levels.push_back(w.levels[l]);

    ScalarField lhs = compose_box(core, 0.0);

    ScalarField u00 = detail::dtt_at(core, 2);
    ScalarField u0 = detail::dt_at(core, 2);

    RadialWeights rw = radial_weights(g, t);
    ScalarField rhs(g);
    for (std::size_t id = 0; id < rhs.data.size(); ++id) {
        double r = rw.r.data[id];
        rhs.data[id] = (t * t - r * r) / (t * t) * u00.data[id] + 3.0 / t * u0.data[id];
    }

    const int n = g.n;
    ScalarField coord[3] = {ScalarField(g), ScalarField(g), ScalarField(g)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                coord[0](i, j, k) = g.coord(i);
                coord[1](i, j, k) = g.coord(j);
                coord[2](i, j, k) = g.coord(k);
            }

    for (int a = 0; a < 3; ++a) {
        ScalarWindow hw = apply(static_cast<OpKind>(static_cast<int>(OpKind::H1) + a), w, gs);
        ScalarField h0 = detail::dt_at(hw, hw.center());
        ScalarField ha = dx(hw.at(0), a);
        ScalarField ua = dx(w.at(0), a);
        for (std::size_t id = 0; id < rhs.data.size(); ++id)
            rhs.data[id] += coord[a].data[id] / (t * t) * h0.data[id] -
                            ha.data[id] / t - coord[a].data[id] / (t * t) * ua.data[id];
    }

    Mask mask = support_core(abs_field(w.at(0)), 3);
    ScalarField diff = lhs - rhs;
    return max_abs_masked(diff, mask);
}

}  // namespace dkg
