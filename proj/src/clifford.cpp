#include "dkg/clifford.hpp"

#include <random>
#include <stdexcept>

namespace dkg {

GammaSet build_gamma_set() {
    GammaSet gs;
    Eigen::Matrix2cd I2 = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd s1, s2, s3;
    s1 << 0, 1, 1, 0;
    s2 << 0, -iu, iu, 0;
    s3 << 1, 0, 0, -1;

    gs.gamma[0].setZero();
    gs.gamma[0].topLeftCorner<2, 2>() = I2;
    gs.gamma[0].bottomRightCorner<2, 2>() = -I2;
    const Eigen::Matrix2cd sigma[3] = {s1, s2, s3};
    for (int a = 1; a <= 3; ++a) {
        gs.gamma[a].setZero();
        gs.gamma[a].topRightCorner<2, 2>() = sigma[a - 1];
        gs.gamma[a].bottomLeftCorner<2, 2>() = -sigma[a - 1];
    }
    gs.gamma5 = iu * gs.gamma[0] * gs.gamma[1] * gs.gamma[2] * gs.gamma[3];
    gs.upsilon = iu * gs.gamma[0] * gs.gamma5;
    return gs;
}

Direction::Direction(const Vec3& w) : omega(w) {
    if (std::abs(omega.squaredNorm() - 1.0) > 1e-14)
        throw std::invalid_argument("Direction: omega must be a unit vector");
}

static Mat4 projector(const GammaSet& gs, const Vec3& w, int sign) {
    Mat4 p = Mat4::Identity();
    for (int a = 1; a <= 3; ++a)
        p += static_cast<double>(sign) * w[a - 1] * gs.gamma[0] * gs.gamma[a];
    return p;
}

Spinor project_pm(const GammaSet& gs, const Spinor& v, const Direction& w, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("project_pm: sign must be +-1");
    return projector(gs, w.omega, sign) * v;
}

double plus_annihilation_residual(const GammaSet& gs, const Spinor& v1,
                                  const Spinor& v2, const Direction& w) {
    Spinor p1 = project_pm(gs, v1, w, +1);
    Spinor p2 = project_pm(gs, v2, w, +1);
    return std::abs(p1.dot(gs.gamma[0] * p2));
}

cplx bilinear_gamma0(const GammaSet& gs, const Spinor& v1, const Spinor& v2) {
    return v1.dot(gs.gamma[0] * v2);
}

static IdentityEntry entry(const std::string& name, double residual,
                           double threshold, int samples = 0, std::uint64_t seed = 0) {
    IdentityEntry e;
    e.name = name;
    e.residuals = {residual};
    e.threshold = threshold;
    e.pass = residual <= threshold;
    e.samples = samples;
    e.seed = seed;
    return e;
}

IdentityReport verify_clifford(const GammaSet& gs) {
    IdentityReport report;
    double anti = 0.0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            Mat4 lhs = gs.gamma[mu] * gs.gamma[nu] + gs.gamma[nu] * gs.gamma[mu];
            Mat4 rhs = -2.0 * gs.metric(mu, nu) * Mat4::Identity();
            anti = std::max(anti, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    report.push_back(entry("anticommutators", anti, 0.0));

    double conj = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        Mat4 lhs = gs.gamma[mu].adjoint();
        Mat4 rhs = -gs.metric(mu, mu) * gs.gamma[mu];
        conj = std::max(conj, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    report.push_back(entry("hermitian_conjugation", conj, 0.0));

    report.push_back(entry("gamma5_selfadjoint",
                           (gs.gamma5.adjoint() - gs.gamma5).cwiseAbs().maxCoeff(), 0.0));
    report.push_back(entry("gamma5_squared",
                           (gs.gamma5 * gs.gamma5 - Mat4::Identity()).cwiseAbs().maxCoeff(), 0.0));
    double g5anti = 0.0;
    for (int mu = 0; mu < 4; ++mu)
        g5anti = std::max(g5anti, (gs.gamma5 * gs.gamma[mu] + gs.gamma[mu] * gs.gamma5)
                                      .cwiseAbs()
                                      .maxCoeff());
    report.push_back(entry("gamma5_anticommutes", g5anti, 0.0));
    report.push_back(entry("upsilon_product",
                           (gs.upsilon + gs.gamma[1] * gs.gamma[2] * gs.gamma[3])
                               .cwiseAbs()
                               .maxCoeff(),
                           0.0));
    return report;
}

IdentityReport misc_matrix_identities(const GammaSet& gs, const Direction& w,
                                      std::uint64_t seed) {
    IdentityReport report;
    Mat4 minus = projector(gs, w.omega, -1);
    Mat4 slash = gs.gamma[0];
    for (int a = 1; a <= 3; ++a) slash -= gs.gamma[a] * w.omega[a - 1];
    report.push_back(entry("minus_projector_annihilates_slash",
                           (minus * slash).cwiseAbs().maxCoeff(), 1e-13));

    double ups = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        Mat4 lhs = gs.upsilon * gs.gamma[mu] * gs.gamma5 +
                   gs.gamma5 * gs.gamma[mu].adjoint() * gs.upsilon;
        ups = std::max(ups, lhs.cwiseAbs().maxCoeff());
    }
    report.push_back(entry("upsilon_gamma_gamma5", ups, 1e-13));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    double comm = 0.0;
    for (int k = 0; k < 64; ++k) {
        Spinor v;
        for (int j = 0; j < 4; ++j) v[j] = cplx(gauss(rng), gauss(rng));
        Spinor lhs = project_pm(gs, gs.gamma5 * v, w, -1);
        Spinor rhs = gs.gamma5 * project_pm(gs, v, w, -1);
        comm = std::max(comm, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    IdentityEntry e = entry("gamma5_minus_commutation", comm, 1e-13, 64, seed);
    report.push_back(e);
    return report;
}

IdentityReport random_identity_sweep(const GammaSet& gs, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    auto rand_spinor = [&] {
        Spinor v;
        for (int j = 0; j < 4; ++j) v[j] = cplx(gauss(rng), gauss(rng));
        return v;
    };
    auto rand_dir = [&] {
        Vec3 w;
        do {
            w = Vec3(gauss(rng), gauss(rng), gauss(rng));
        } while (w.norm() < 1e-3);
        return Direction(Vec3(w / w.norm()));
    };

    double r_sum = 0.0, r_annih = 0.0, r_norm = 0.0, r_split = 0.0;
    for (int k = 0; k < samples; ++k) {
        Spinor v = rand_spinor(), u = rand_spinor();
        Direction w = rand_dir();
        Spinor vp = project_pm(gs, v, w, +1);
        Spinor vm = project_pm(gs, v, w, -1);

        r_sum = std::max(r_sum, (vp + vm - 2.0 * v).cwiseAbs().maxCoeff());
        double scale = std::max(1.0, v.norm() * u.norm());
        r_annih = std::max(r_annih, plus_annihilation_residual(gs, v, u, w) / scale);

        // |[v]_-|^2 = 2|v|^2 - 2 omega_a Re(v^* g^0 g^a v)
        double rhs = 2.0 * v.squaredNorm();
        for (int a = 1; a <= 3; ++a)
            rhs -= 2.0 * w.omega[a - 1] * std::real(v.dot(gs.gamma[0] * gs.gamma[a] * v));
        r_norm = std::max(r_norm, std::abs(vm.squaredNorm() - rhs) / std::max(1.0, rhs));

        // v^* g^0 u = 1/4 ([v]_-^* g0 [u]_+ + [v]_+^* g0 [u]_- + [v]_-^* g0 [u]_-)
        Spinor up = project_pm(gs, u, w, +1);
        Spinor um = project_pm(gs, u, w, -1);
        cplx quarter = 0.25 * (vm.dot(gs.gamma[0] * up) + vp.dot(gs.gamma[0] * um) +
                               vm.dot(gs.gamma[0] * um));
        r_split = std::max(r_split, std::abs(bilinear_gamma0(gs, v, u) - quarter) / scale);
    }

    IdentityReport report;
    auto push = [&](const std::string& n, double r) {
        IdentityEntry e;
        e.name = n;
        e.residuals = {r};
        e.threshold = 1e-13;
        e.pass = r <= e.threshold;
        e.samples = samples;
        e.seed = seed;
        report.push_back(e);
    };
    push("projection_sum", r_sum);
    push("plus_annihilation", r_annih);
    push("minus_norm_expansion", r_norm);
    push("gamma0_quarter_split", r_split);
    return report;
}

}  // namespace dkg
