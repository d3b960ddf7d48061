#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dkg/types.hpp"

namespace dkg {

enum class Boundary { ZeroPad, Periodic };

// Cubic lattice on [-L, L]^3. Zero-pad mode places nodes on both endpoints
// (h = 2L/(n-1)) and treats the exterior as zero; periodic mode drops the
// right endpoint (h = 2L/n) so spectral transforms line up exactly.
struct GridSpec {
    int n = 0;
    double half_width = 0.0;
    Boundary boundary = Boundary::ZeroPad;

    GridSpec() = default;
    GridSpec(int n_, double L, Boundary b) : n(n_), half_width(L), boundary(b) {
        if (n < 17) throw std::invalid_argument("GridSpec: n must be >= 17");
        if (L <= 0) throw std::invalid_argument("GridSpec: half_width must be positive");
    }

    double h() const {
        return boundary == Boundary::ZeroPad ? 2.0 * half_width / (n - 1)
                                             : 2.0 * half_width / n;
    }
    double coord(int i) const { return -half_width + i * h(); }
    std::size_t size() const {
        return static_cast<std::size_t>(n) * n * n;
    }
    std::size_t idx(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }
    bool operator==(const GridSpec& o) const {
        return n == o.n && half_width == o.half_width && boundary == o.boundary;
    }
};

template <class T>
struct Field {
    using value_type = T;

    GridSpec grid;
    std::vector<T> data;

    Field() = default;
    explicit Field(const GridSpec& g) : grid(g), data(g.size(), T{}) {}

    T& operator()(int i, int j, int k) { return data[grid.idx(i, j, k)]; }
    const T& operator()(int i, int j, int k) const { return data[grid.idx(i, j, k)]; }
};

using ScalarField = Field<double>;
using CField = Field<cplx>;
using SpinorField = Field<Spinor>;

template <class T>
Field<T>& operator+=(Field<T>& a, const Field<T>& b) {
    for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] += b.data[i];
    return a;
}

template <class T>
Field<T>& operator-=(Field<T>& a, const Field<T>& b) {
    for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] -= b.data[i];
    return a;
}

template <class T>
Field<T> operator+(Field<T> a, const Field<T>& b) { return a += b; }

template <class T>
Field<T> operator-(Field<T> a, const Field<T>& b) { return a -= b; }

template <class T, class S>
Field<T> operator*(S c, Field<T> a) {
    for (auto& v : a.data) v = c * v;
    return a;
}

// Geometric weights at fixed time t: r, omega_a (zero at the origin node),
// <t-r>, <t+r>, and the raw t-r.
struct RadialWeights {
    ScalarField r;
    ScalarField omega[3];
    ScalarField jb_tmr;
    ScalarField jb_tpr;
    ScalarField tmr;
};

RadialWeights radial_weights(const GridSpec& grid, double t);

}  // namespace dkg
