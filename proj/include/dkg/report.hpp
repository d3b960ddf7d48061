#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dkg {

// One verified identity or diagnostic: residuals per resolution (a single
// entry for exact-algebra checks), observed convergence order when at least
// two resolutions are present, and a pass/fail verdict against `threshold`.
struct IdentityEntry {
    std::string name;
    std::vector<double> residuals;
    std::optional<double> order;
    double threshold = 0.0;
    bool pass = false;
    int samples = 0;
    std::uint64_t seed = 0;

    double max_residual() const {
        double m = 0.0;
        for (double r : residuals) m = std::max(m, r);
        return m;
    }
};

using IdentityReport = std::vector<IdentityEntry>;

std::string to_json(const IdentityReport& report);

// Least-squares slope of log(residual) against log(h): the observed order.
double observed_order(const std::vector<double>& hs,
                      const std::vector<double>& residuals);

}  // namespace dkg
