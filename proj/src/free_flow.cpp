#include "dkg/free_flow.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>
#include <memory>
#include <vector>

namespace dkg {

namespace {

void require_periodic(const GridSpec& g) {
    if (g.boundary != Boundary::Periodic)
        throw std::invalid_argument("spectral flow requires a periodic grid");
}

double freq(int k, int n, double L) {
    int m = k <= n / 2 ? k : k - n;
    return M_PI * m / L;
}

// modified wavenumber of the 4th-order centered first derivative
double freq_fd(double xi, double h) {
    return (8.0 * std::sin(xi * h) - std::sin(2.0 * xi * h)) / (6.0 * h);
}

// symbol of the 4th-order Laplacian, one dimension (nonnegative)
double lap_fd(double xi, double h) {
    return (30.0 - 32.0 * std::cos(xi * h) + 2.0 * std::cos(2.0 * xi * h)) /
           (12.0 * h * h);
}

struct Fft3 {
    int n;
    fftw_plan fwd, bwd;
    std::vector<cplx> buf;

    explicit Fft3(int n_) : n(n_), buf(static_cast<std::size_t>(n_) * n_ * n_) {
        auto* p = reinterpret_cast<fftw_complex*>(buf.data());
        fwd = fftw_plan_dft_3d(n, n, n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_3d(n, n, n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft3() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    void forward() { fftw_execute(fwd); }
    void backward() {
        fftw_execute(bwd);
        double s = 1.0 / (static_cast<double>(n) * n * n);
        for (cplx& v : buf) v *= s;
    }
};

}  // namespace

SpinorField dirac_free_flow(const SpinorField& psi0, double M, double t,
                            const GammaSet& gs, bool discrete_symbol) {
    require_periodic(psi0.grid);
    const int n = psi0.grid.n;
    const double L = psi0.grid.half_width;
    const double h = psi0.grid.h();

    std::vector<std::unique_ptr<Fft3>> comp;
    for (int c = 0; c < 4; ++c) comp.push_back(std::make_unique<Fft3>(n));
    for (int c = 0; c < 4; ++c) {
        for (std::size_t id = 0; id < psi0.data.size(); ++id)
            comp[c]->buf[id] = psi0.data[id][c];
        comp[c]->forward();
    }

    Mat4 alpha[3] = {gs.alpha(1), gs.alpha(2), gs.alpha(3)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Vec3 xi(freq(i, n, L), freq(j, n, L), freq(k, n, L));
                if (discrete_symbol)
                    xi = Vec3(freq_fd(xi[0], h), freq_fd(xi[1], h), freq_fd(xi[2], h));
                Mat4 H = M * gs.gamma[0];
                for (int a = 0; a < 3; ++a) H += xi[a] * alpha[a];
                double w = std::sqrt(xi.squaredNorm() + M * M);
                // exp(-i t H) = cos(w t) I - i sin(w t)/w H  (H^2 = w^2 I)
                double sc = w > 0.0 ? std::sin(w * t) / w : t;
                Mat4 U = std::cos(w * t) * Mat4::Identity() - iu * sc * H;

                std::size_t id = psi0.grid.idx(i, j, k);
                Spinor v;
                for (int c = 0; c < 4; ++c) v[c] = comp[c]->buf[id];
                Spinor u = U * v;
                for (int c = 0; c < 4; ++c) comp[c]->buf[id] = u[c];
            }

    SpinorField out(psi0.grid);
    for (int c = 0; c < 4; ++c) {
        comp[c]->backward();
        for (std::size_t id = 0; id < out.data.size(); ++id)
            out.data[id][c] = comp[c]->buf[id];
    }
    return out;
}

std::pair<ScalarField, ScalarField> wave_free_flow(const ScalarField& u0,
                                                   const ScalarField& u1,
                                                   double t, double m,
                                                   bool discrete_symbol) {
    require_periodic(u0.grid);
    if (!(u0.grid == u1.grid)) throw std::invalid_argument("wave_free_flow: grid mismatch");
    const int n = u0.grid.n;
    const double L = u0.grid.half_width;
    const double h = u0.grid.h();

    Fft3 a(n), b(n);
    for (std::size_t id = 0; id < u0.data.size(); ++id) {
        a.buf[id] = u0.data[id];
        b.buf[id] = u1.data[id];
    }
    a.forward();
    b.forward();

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Vec3 xi(freq(i, n, L), freq(j, n, L), freq(k, n, L));
                double k2 = discrete_symbol
                                ? lap_fd(xi[0], h) + lap_fd(xi[1], h) + lap_fd(xi[2], h)
                                : xi.squaredNorm();
                double w = std::sqrt(k2 + m * m);
                std::size_t id = u0.grid.idx(i, j, k);
                cplx uh = a.buf[id], vh = b.buf[id];
                if (w > 0.0) {
                    a.buf[id] = std::cos(w * t) * uh + std::sin(w * t) / w * vh;
                    b.buf[id] = -w * std::sin(w * t) * uh + std::cos(w * t) * vh;
                } else {
                    a.buf[id] = uh + t * vh;
                    b.buf[id] = vh;
                }
            }

    a.backward();
    b.backward();
    ScalarField u(u0.grid), ut(u0.grid);
    for (std::size_t id = 0; id < u.data.size(); ++id) {
        u.data[id] = a.buf[id].real();
        ut.data[id] = b.buf[id].real();
    }
    return {u, ut};
}

}  // namespace dkg
