#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dkg/grid.hpp"

namespace dkg {

namespace detail {

inline int wrap(int i, int n) { return (i % n + n) % n; }

template <class T>
T sample(const Field<T>& f, int i, int j, int k) {
    const int n = f.grid.n;
    if (f.grid.boundary == Boundary::Periodic)
        return f(wrap(i, n), wrap(j, n), wrap(k, n));
    if (i < 0 || i >= n || j < 0 || j >= n || k < 0 || k >= n) return T{};
    return f(i, j, k);
}

inline double abs_value(double v) { return std::abs(v); }
inline double abs_value(const cplx& v) { return std::abs(v); }
inline double abs_value(const Spinor& v) { return v.norm(); }

}  // namespace detail

// Fixed-order pairwise reduction; bit-stable for a given input order.
double pairwise_sum(const std::vector<double>& v);

// 4th-order centered first derivative along axis 0..2 (x1, x2, x3).
template <class T>
Field<T> dx(const Field<T>& f, int axis) {
    Field<T> out(f.grid);
    const int n = f.grid.n;
    const double c = 1.0 / (12.0 * f.grid.h());
    const int di = axis == 0, dj = axis == 1, dk = axis == 2;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                T v = detail::sample(f, i - 2 * di, j - 2 * dj, k - 2 * dk) -
                      detail::sample(f, i + 2 * di, j + 2 * dj, k + 2 * dk) +
                      8.0 * (detail::sample(f, i + di, j + dj, k + dk) -
                             detail::sample(f, i - di, j - dj, k - dk));
                out(i, j, k) = c * v;
            }
    return out;
}

// 4th-order Laplacian, all three axes.
template <class T>
Field<T> laplacian(const Field<T>& f) {
    Field<T> out(f.grid);
    const int n = f.grid.n;
    const double c = 1.0 / (12.0 * f.grid.h() * f.grid.h());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                T acc = -90.0 * f(i, j, k);
                const int d[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
                for (int a = 0; a < 3; ++a) {
                    acc += 16.0 * (detail::sample(f, i + d[a][0], j + d[a][1], k + d[a][2]) +
                                   detail::sample(f, i - d[a][0], j - d[a][1], k - d[a][2]));
                    acc -= detail::sample(f, i + 2 * d[a][0], j + 2 * d[a][1], k + 2 * d[a][2]) +
                           detail::sample(f, i - 2 * d[a][0], j - 2 * d[a][1], k - 2 * d[a][2]);
                }
                out(i, j, k) = c * acc;
            }
    return out;
}

// Trapezoid-weight quadrature (zero-pad) or plain h^3 (periodic), summed
// slab-by-slab in fixed order so the result is thread-count independent.
double integrate(const ScalarField& f);

template <class T>
ScalarField abs_field(const Field<T>& f) {
    ScalarField out(f.grid);
    for (std::size_t id = 0; id < f.data.size(); ++id)
        out.data[id] = detail::abs_value(f.data[id]);
    return out;
}

template <class T>
ScalarField abs2_field(const Field<T>& f) {
    ScalarField out(f.grid);
    for (std::size_t id = 0; id < f.data.size(); ++id) {
        double a = detail::abs_value(f.data[id]);
        out.data[id] = a * a;
    }
    return out;
}

template <class T>
double l2_norm(const Field<T>& f) {
    return std::sqrt(integrate(abs2_field(f)));
}

template <class T>
double max_abs(const Field<T>& f) {
    double m = 0.0;
    for (const T& v : f.data) m = std::max(m, detail::abs_value(v));
    return m;
}

using Mask = std::vector<std::uint8_t>;

template <class T>
double max_abs_masked(const Field<T>& f, const Mask& mask) {
    double m = 0.0;
    for (std::size_t id = 0; id < f.data.size(); ++id)
        if (mask[id]) m = std::max(m, detail::abs_value(f.data[id]));
    return m;
}

// Largest |f| over the outermost two shells; in zero-pad mode anything here
// leaks into the implicit zero padding.
template <class T>
double shell_max(const Field<T>& f) {
    const int n = f.grid.n;
    double m = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                bool shell = i < 2 || i >= n - 2 || j < 2 || j >= n - 2 || k < 2 || k >= n - 2;
                if (shell) m = std::max(m, detail::abs_value(f(i, j, k)));
            }
    return m;
}

// True when any node in the outermost two shells exceeds rel_tol * max|f|;
// in zero-pad mode that means the support has reached the pad zone. A genuine
// wavefront arrives at O(1) relative amplitude; wide-stencil dispersion tails
// ahead of the cone sit many orders below it, so callers monitoring a run
// compare against a fixed reference amplitude instead of the default.
template <class T>
bool support_touches_boundary(const Field<T>& f, double rel_tol = 1e-12) {
    return shell_max(f) > rel_tol * max_abs(f);
}

// Nodes of {|f| > rel_tol * max|f|} at least `cells` 6-neighbor erosions from
// the support edge; used to keep residual norms away from cutoff noise.
Mask support_core(const ScalarField& mag, int cells, double rel_tol = 1e-10);

// Erosion depth covering a fixed physical distance (0.75 length units, with a
// floor of 3 cells) so refined grids keep the same core region.
inline int erosion_cells(double h) {
    return std::max(3, static_cast<int>(std::lround(0.75 / h)));
}

}  // namespace dkg
