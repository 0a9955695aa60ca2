#pragma once

#include "sdflow/grid.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sdflow {

enum class Retention { all, dyadic };

/// Everything needed to reproduce a run bit-for-bit, plus wall-clock
/// metadata that is excluded from hashing and from the determinism contract.
struct RunManifest {
    std::string config_json;   // canonical serialized configuration
    std::string code_version;
    std::string wall_clock;    // informational only
    std::vector<std::string> outputs;
};

/// Time-ordered snapshots with optional dyadic thinning: all snapshots in
/// the most recent octave are kept, older octaves are thinned to 8 per
/// octave so windows (t/2, t] stay usable at O(log T) memory. Pinned
/// snapshots are never thinned.
class Trajectory {
public:
    explicit Trajectory(Retention retention = Retention::all,
                        std::shared_ptr<const RunManifest> meta = nullptr);

    void push(Field snapshot, bool pinned = false);

    const std::vector<Field>& snapshots() const { return snapshots_; }
    bool empty() const { return snapshots_.empty(); }
    double t_begin() const;
    double t_end() const;
    Retention retention() const { return retention_; }
    std::shared_ptr<const RunManifest> meta() const { return meta_; }

    /// Snapshots with time in (t/2, t], sorted. Throws std::invalid_argument
    /// if the window is empty or t is outside the span.
    std::vector<Field> window(double t) const;

    /// Snapshots with time in (a, b], sorted.
    std::vector<Field> window(double a, double b) const;

    /// Snapshot at exactly time t (within tol), or linear interpolation
    /// between the bracketing snapshots.
    Field at_time(double t) const;

private:
    void thin();

    Retention retention_;
    std::vector<Field> snapshots_;
    std::vector<bool> pinned_;
    std::shared_ptr<const RunManifest> meta_;
};

} // namespace sdflow
