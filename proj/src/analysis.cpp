#include "dkg/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "dkg/stencil.hpp"

namespace dkg {

DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& values) {
    if (times.size() != values.size())
        throw std::invalid_argument("fit_decay: length mismatch");
    if (times.size() < 5) throw std::invalid_argument("fit_decay: need >= 5 points");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (values[i] <= 0.0 || times[i] <= 0.0)
            throw std::invalid_argument("fit_decay: nonpositive value");
        double x = std::log(times[i]), y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    DecayFit fit;
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.exponent * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        double e = std::log(values[i]) - fit.intercept - fit.exponent * std::log(times[i]);
        ss += e * e;
    }
    fit.rms = std::sqrt(ss / n);
    fit.t_begin = times.front();
    fit.t_end = times.back();
    return fit;
}

std::vector<MonitorEntry> uniform_energy_monitor(
    const std::vector<double>& times,
    const std::map<std::string, std::vector<double>>& series,
    double t_transient, double bound) {
    std::vector<MonitorEntry> out;
    for (const auto& [name, values] : series) {
        if (values.size() != times.size())
            throw std::invalid_argument("uniform_energy_monitor: length mismatch for " + name);
        MonitorEntry e;
        e.name = name;
        bool first = true;
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (times[i] < t_transient) continue;
            if (first) {
                e.min = e.max = values[i];
                first = false;
            } else {
                e.min = std::min(e.min, values[i]);
                e.max = std::max(e.max, values[i]);
            }
        }
        if (first) throw std::invalid_argument("uniform_energy_monitor: no samples past transient");
        e.oscillation = e.max > 0.0 ? (e.max - e.min) / e.max : 0.0;
        e.pass = e.oscillation <= bound;
        out.push_back(e);
    }
    return out;
}

namespace {

template <class T>
std::vector<double> cauchy_impl(const std::vector<Field<T>>& snaps) {
    std::vector<double> out;
    for (std::size_t i = 1; i < snaps.size(); ++i) {
        Field<T> d = snaps[i];
        d -= snaps[i - 1];
        out.push_back(l2_norm(d));
    }
    return out;
}

}  // namespace

std::vector<double> cauchy_differences(const std::vector<SpinorField>& snaps) {
    return cauchy_impl(snaps);
}

std::vector<double> cauchy_differences_scalar(const std::vector<ScalarField>& snaps) {
    return cauchy_impl(snaps);
}

std::vector<double> duhamel_tails(const std::vector<double>& times,
                                  const std::vector<double>& source_norms) {
    if (times.size() != source_norms.size())
        throw std::invalid_argument("duhamel_tails: length mismatch");
    std::size_t n = times.size();
    std::vector<double> tails(n, 0.0);
    for (std::size_t i = n - 1; i-- > 0;) {
        double seg = 0.5 * (times[i + 1] - times[i]) * (source_norms[i] + source_norms[i + 1]);
        tails[i] = tails[i + 1] + seg;
    }
    return tails;
}

}  // namespace dkg
