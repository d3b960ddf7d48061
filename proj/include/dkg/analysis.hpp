#pragma once

#include <map>
#include <string>
#include <vector>

#include "dkg/grid.hpp"

namespace dkg {

struct DecayFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
    double t_begin = 0.0, t_end = 0.0;
};

// Least-squares slope of log(value) against log(t); needs >= 5 points, all
// values positive.
DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& values);

struct MonitorEntry {
    std::string name;
    double min = 0.0, max = 0.0;
    double oscillation = 0.0;  // (max - min) / max over t >= t_transient
    bool pass = false;
};

std::vector<MonitorEntry> uniform_energy_monitor(
    const std::vector<double>& times,
    const std::map<std::string, std::vector<double>>& series,
    double t_transient, double bound);

// ||a_i - a_j|| between consecutive back-evolved snapshots (L2 of the
// difference field).
std::vector<double> cauchy_differences(const std::vector<SpinorField>& snaps);
std::vector<double> cauchy_differences_scalar(const std::vector<ScalarField>& snaps);

// tail_k = integral_{t_k}^{t_end} ||source|| dtau by trapezoid; nonnegative
// and nonincreasing by construction.
std::vector<double> duhamel_tails(const std::vector<double>& times,
                                  const std::vector<double>& source_norms);

}  // namespace dkg
