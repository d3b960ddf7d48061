#include "dkg/stencil.hpp"

namespace dkg {

static double pairwise_range(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_range(v, half) + pairwise_range(v + half, n - half);
}

double pairwise_sum(const std::vector<double>& v) {
    return v.empty() ? 0.0 : pairwise_range(v.data(), v.size());
}

double integrate(const ScalarField& f) {
    const int n = f.grid.n;
    const double h = f.grid.h();
    const bool trap = f.grid.boundary == Boundary::ZeroPad;
    auto wt = [&](int i) { return trap && (i == 0 || i == n - 1) ? 0.5 : 1.0; };

    std::vector<double> slab(n, 0.0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        std::vector<double> row(n, 0.0);
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += wt(k) * f(i, j, k);
            row[j] = wt(j) * acc;
        }
        slab[i] = wt(i) * pairwise_sum(row);
    }
    return h * h * h * pairwise_sum(slab);
}

Mask support_core(const ScalarField& mag, int cells, double rel_tol) {
    const int n = mag.grid.n;
    double thresh = rel_tol * max_abs(mag);
    Mask mask(mag.grid.size(), 0);
    for (std::size_t id = 0; id < mask.size(); ++id)
        mask[id] = mag.data[id] > thresh ? 1 : 0;

    Mask next(mask.size(), 0);
    for (int pass = 0; pass < cells; ++pass) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    std::size_t id = mag.grid.idx(i, j, k);
                    if (!mask[id]) {
                        next[id] = 0;
                        continue;
                    }
                    bool keep = i > 0 && i < n - 1 && j > 0 && j < n - 1 && k > 0 && k < n - 1;
                    if (keep)
                        keep = mask[mag.grid.idx(i - 1, j, k)] && mask[mag.grid.idx(i + 1, j, k)] &&
                               mask[mag.grid.idx(i, j - 1, k)] && mask[mag.grid.idx(i, j + 1, k)] &&
                               mask[mag.grid.idx(i, j, k - 1)] && mask[mag.grid.idx(i, j, k + 1)];
                    next[id] = keep ? 1 : 0;
                }
        mask.swap(next);
    }
    return mask;
}

}  // namespace dkg
