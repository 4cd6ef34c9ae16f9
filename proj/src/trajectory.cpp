#include "fracbq/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace fracbq {

std::vector<double> make_time_grid(double horizon, int count, TimeGridKind kind) {
    if (!(horizon > 0.0)) throw std::invalid_argument("make_time_grid: horizon must be positive");
    if (count < 8) throw std::invalid_argument("make_time_grid: need at least 8 nodes");
    std::vector<double> t(static_cast<std::size_t>(count));
    if (kind == TimeGridKind::Uniform) {
        for (int i = 0; i < count; ++i)
            t[static_cast<std::size_t>(i)] = horizon * i / (count - 1);
    } else {
        // t_1 = T * 2^{-(count-2)/4}, then four nodes per octave up to T
        t[0] = 0.0;
        for (int i = 1; i < count; ++i) {
            const double frac = static_cast<double>(i - (count - 1)) / 4.0;
            t[static_cast<std::size_t>(i)] = horizon * std::exp2(frac);
        }
    }
    return t;
}

std::vector<double> trapezoid_weights(const std::vector<double>& times) {
    const std::size_t n = times.size();
    std::vector<double> w(n, 0.0);
    if (n < 2) return w;
    w[0] = 0.5 * (times[1] - times[0]);
    for (std::size_t i = 1; i + 1 < n; ++i) w[i] = 0.5 * (times[i + 1] - times[i - 1]);
    w[n - 1] = 0.5 * (times[n - 1] - times[n - 2]);
    return w;
}

namespace {

template <typename Traj>
void validate_impl(const Traj& tr, const char* what) {
    if (tr.times.size() < 8)
        throw std::invalid_argument(std::string(what) + ": need at least 8 time nodes");
    if (tr.times.size() != tr.snapshots.size())
        throw std::invalid_argument(std::string(what) + ": times and snapshots disagree");
    if (tr.times.front() < 0.0)
        throw std::invalid_argument(std::string(what) + ": times must be nonnegative");
    for (std::size_t i = 1; i < tr.times.size(); ++i)
        if (!(tr.times[i] > tr.times[i - 1]))
            throw std::invalid_argument(std::string(what) + ": times must be strictly increasing");
    for (const auto& s : tr.snapshots)
        if (s.grid != tr.grid)
            throw std::invalid_argument(std::string(what) + ": snapshot grid mismatch");
}

} // namespace

void validate(const ScalarTrajectory& tr) { validate_impl(tr, "ScalarTrajectory"); }
void validate(const VectorTrajectory& tr) { validate_impl(tr, "VectorTrajectory"); }

void axpy(double a, const ScalarTrajectory& x, ScalarTrajectory& y) {
    if (x.size() != y.size()) throw std::invalid_argument("trajectory axpy: size mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) axpy(a, x.snapshots[i], y.snapshots[i]);
}

void axpy(double a, const VectorTrajectory& x, VectorTrajectory& y) {
    if (x.size() != y.size()) throw std::invalid_argument("trajectory axpy: size mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) axpy(a, x.snapshots[i], y.snapshots[i]);
}

void scale(ScalarTrajectory& tr, double a) {
    for (auto& s : tr.snapshots) scale(s, a);
}

void scale(VectorTrajectory& tr, double a) {
    for (auto& s : tr.snapshots) scale(s, a);
}

double max_abs(const ScalarTrajectory& tr) {
    double m = 0.0;
    for (const auto& s : tr.snapshots) m = std::max(m, max_abs(s));
    return m;
}

double max_abs(const VectorTrajectory& tr) {
    double m = 0.0;
    for (const auto& s : tr.snapshots) m = std::max(m, max_abs(s));
    return m;
}

} // namespace fracbq
