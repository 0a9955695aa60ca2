#include "sdflow/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdflow {

Trajectory::Trajectory(Retention retention, std::shared_ptr<const RunManifest> meta)
    : retention_(retention), meta_(std::move(meta)) {}

double Trajectory::t_begin() const {
    if (snapshots_.empty()) throw std::invalid_argument("Trajectory: empty");
    return snapshots_.front().time();
}

double Trajectory::t_end() const {
    if (snapshots_.empty()) throw std::invalid_argument("Trajectory: empty");
    return snapshots_.back().time();
}

void Trajectory::push(Field snapshot, bool pinned) {
    if (!snapshots_.empty() && !(snapshot.time() > snapshots_.back().time()))
        throw std::invalid_argument("Trajectory: snapshot times must strictly increase");
    snapshots_.push_back(std::move(snapshot));
    pinned_.push_back(pinned);
    if (retention_ == Retention::dyadic) thin();
}

void Trajectory::thin() {
    const double t_last = snapshots_.back().time();
    if (t_last <= 0.0) return;
    const double recent = t_last / 2.0;

    // Absolute octave bins [2^m, 2^{m+1}); bins fully below t_last/2 are
    // thinned to 8 snapshots chosen nearest to even targets within the bin.
    std::vector<Field> kept;
    std::vector<bool> kept_pinned;
    size_t i = 0;
    const size_t n = snapshots_.size();
    while (i < n) {
        double ti = snapshots_[i].time();
        if (ti <= 0.0 || ti >= recent) {
            kept.push_back(snapshots_[i]);
            kept_pinned.push_back(pinned_[i]);
            ++i;
            continue;
        }
        int m = static_cast<int>(std::floor(std::log2(ti)));
        double lo = std::ldexp(1.0, m), hi = std::ldexp(2.0, m);
        size_t j = i;
        while (j < n && snapshots_[j].time() < hi && snapshots_[j].time() < recent) ++j;
        size_t count = j - i;
        if (hi > recent || count <= 8) {
            for (size_t k = i; k < j; ++k) {
                kept.push_back(snapshots_[k]);
                kept_pinned.push_back(pinned_[k]);
            }
        } else {
            std::vector<bool> select(count, false);
            for (size_t k = 0; k < count; ++k)
                if (pinned_[i + k]) select[k] = true;
            for (int q = 0; q < 8; ++q) {
                double target = lo + (q + 0.5) / 8.0 * (hi - lo);
                size_t best = 0;
                double bd = 1e300;
                for (size_t k = 0; k < count; ++k) {
                    double d = std::abs(snapshots_[i + k].time() - target);
                    if (d < bd) { bd = d; best = k; }
                }
                select[best] = true;
            }
            for (size_t k = 0; k < count; ++k) {
                if (select[k]) {
                    kept.push_back(snapshots_[i + k]);
                    kept_pinned.push_back(pinned_[i + k]);
                }
            }
        }
        i = j;
    }
    snapshots_ = std::move(kept);
    pinned_ = std::move(kept_pinned);
}

std::vector<Field> Trajectory::window(double a, double b) const {
    std::vector<Field> out;
    for (const auto& s : snapshots_)
        if (s.time() > a && s.time() <= b) out.push_back(s);
    return out;
}

std::vector<Field> Trajectory::window(double t) const {
    if (snapshots_.empty() || t < t_begin() || t > t_end() * (1.0 + 1e-12))
        throw std::invalid_argument("Trajectory::window: t outside trajectory span");
    auto out = window(t / 2.0, t);
    if (out.empty())
        throw std::invalid_argument("Trajectory::window: empty window");
    return out;
}

Field Trajectory::at_time(double t) const {
    if (snapshots_.empty())
        throw std::invalid_argument("Trajectory::at_time: empty trajectory");
    const double tol = 1e-9 * std::max(1.0, std::abs(t));
    for (const auto& s : snapshots_)
        if (std::abs(s.time() - t) <= tol) return s;
    if (t < t_begin() || t > t_end())
        throw std::invalid_argument("Trajectory::at_time: t outside span");
    size_t hi = 0;
    while (snapshots_[hi].time() < t) ++hi;
    const Field& f1 = snapshots_[hi - 1];
    const Field& f2 = snapshots_[hi];
    double w = (t - f1.time()) / (f2.time() - f1.time());
    std::vector<double> vals(f1.size());
    for (int j = 0; j < f1.size(); ++j)
        vals[j] = (1.0 - w) * f1[j] + w * f2[j];
    return Field(f1.grid(), std::move(vals), t, f1.label());
}

} // namespace sdflow
