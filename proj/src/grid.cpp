#include "dkg/grid.hpp"

#include <cmath>

namespace dkg {

RadialWeights radial_weights(const GridSpec& grid, double t) {
    RadialWeights w{ScalarField(grid),
                    {ScalarField(grid), ScalarField(grid), ScalarField(grid)},
                    ScalarField(grid),
                    ScalarField(grid),
                    ScalarField(grid)};
    const int n = grid.n;
    for (int i = 0; i < n; ++i) {
        double x = grid.coord(i);
        for (int j = 0; j < n; ++j) {
            double y = grid.coord(j);
            for (int k = 0; k < n; ++k) {
                double z = grid.coord(k);
                double r = std::sqrt(x * x + y * y + z * z);
                std::size_t id = grid.idx(i, j, k);
                w.r.data[id] = r;
                if (r > 0.0) {
                    w.omega[0].data[id] = x / r;
                    w.omega[1].data[id] = y / r;
                    w.omega[2].data[id] = z / r;
                }
                w.jb_tmr.data[id] = jbracket(t - r);
                w.jb_tpr.data[id] = jbracket(t + r);
                w.tmr.data[id] = t - r;
            }
        }
    }
    return w;
}

}  // namespace dkg
