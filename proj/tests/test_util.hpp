#pragma once

#include <functional>

#include "dkg/grid.hpp"
#include "dkg/vector_fields.hpp"

namespace dkg::testutil {

using ScalarFn = std::function<double(double t, double x, double y, double z)>;
using SpinorFn = std::function<Spinor(double t, double x, double y, double z)>;

inline ScalarField fill_scalar(const GridSpec& g, double t, const ScalarFn& f) {
    ScalarField out(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k)
                out(i, j, k) = f(t, g.coord(i), g.coord(j), g.coord(k));
    return out;
}

inline SpinorField fill_spinor(const GridSpec& g, double t, const SpinorFn& f) {
    SpinorField out(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k)
                out(i, j, k) = f(t, g.coord(i), g.coord(j), g.coord(k));
    return out;
}

inline ScalarWindow scalar_window(const GridSpec& g, double t0, double dt, int levels,
                                  const ScalarFn& f) {
    ScalarWindow w;
    w.t_center = t0;
    w.dt = dt;
    int c = levels / 2;
    for (int l = 0; l < levels; ++l)
        w.levels.push_back(fill_scalar(g, t0 + (l - c) * dt, f));
    return w;
}

inline SpinorWindow spinor_window(const GridSpec& g, double t0, double dt, int levels,
                                  const SpinorFn& f) {
    SpinorWindow w;
    w.t_center = t0;
    w.dt = dt;
    int c = levels / 2;
    for (int l = 0; l < levels; ++l)
        w.levels.push_back(fill_spinor(g, t0 + (l - c) * dt, f));
    return w;
}

// Compactly supported C^7 bump (radius 1.6) used all over the convergence
// studies. True compact support keeps the zero-pad exterior exact, and the
// polynomial profile keeps high derivatives moderate near the support edge
// so 4th-order stencils converge cleanly at these resolutions.
inline double compact_profile(double s2) {
    if (s2 >= 1.0) return 0.0;
    double w = 1.0 - s2;
    double w2 = w * w, w4 = w2 * w2;
    return w4 * w4;
}

inline double test_bump(double t, double x, double y, double z) {
    double s2 = (x * x + y * y + z * z) / (1.6 * 1.6);
    return compact_profile(s2) * std::cos(0.7 * t + x - 0.5 * y + 0.3 * z);
}

}  // namespace dkg::testutil
