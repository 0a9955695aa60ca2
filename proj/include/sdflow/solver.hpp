#pragma once

#include "sdflow/flow_ops.hpp"
#include "sdflow/model.hpp"
#include "sdflow/trajectory.hpp"

#include <optional>
#include <vector>

namespace sdflow {

enum class Scheme { if_imex_spectral, semi_implicit_fd };
enum class DtPolicy {
    fixed,       // dt_fixed throughout
    scheme_auto, // IMEX: safety*min(dx^4, 1/4); FD: safety*dx^2
    ramped       // scheme_auto floor, then dt grows toward ramp_eta * t
};

struct SolverConfig {
    Scheme scheme = Scheme::if_imex_spectral;
    DtPolicy dt_policy = DtPolicy::scheme_auto;
    double dt_fixed = 0.0;
    double safety = 0.9;          // in (0, 1]
    double t_end = 1.0;
    double epsilon0 = 0.1;        // smallness threshold
    Retention retention = Retention::dyadic;
    int snapshots_per_octave = 8;
    double ramp_eta = 0.002;      // dt <= ramp_eta * t under DtPolicy::ramped
    std::vector<double> record_times; // hit exactly, snapshots pinned

    void validate() const;
};

struct BlowupDiagnostic {
    double time = 0.0;
    std::string reason;
};

struct IntegrationResult {
    Trajectory trajectory{Retention::all};
    std::vector<double> snapshot_times;
    std::vector<SmallnessReport> smallness; // one per snapshot
    std::vector<double> mass;               // mean of v per snapshot
    bool blew_up = false;
    std::optional<BlowupDiagnostic> diagnostic;
};

/// One step of the exponential-integrating-factor IMEX scheme for
/// v_t = -v_xxxx + d^2(alpha v_xx + F) on a periodic grid: the biharmonic
/// part is exact per mode, the perturbation is frozen at the step start and
/// propagated through the Duhamel multiplier. Exact when alpha = F = 0.
Field step_if_imex(const Field& v, double dt, const CurvatureModel& model);

/// One linearly implicit step on a truncated grid with coefficients frozen
/// at the current state, solved as a banded system. Fields labeled "u" step
/// the graph equation with u_x clamped to the boundary slopes and u_xx = 0
/// at the ends; fields labeled "v" step the slope equation with v clamped
/// and v_x = 0 at the ends.
Field step_semi_implicit(const Field& field, double dt, const CurvatureModel& model);

/// March to config.t_end with snapshotting and smallness/mass records.
/// Blow-up aborts with the partial trajectory and a diagnostic.
IntegrationResult integrate(const Field& initial, const SolverConfig& config,
                            const CurvatureModel& model);

struct PicardReport {
    std::vector<double> distances; // sup-norm of successive differences
    std::vector<double> factors;   // ratios where the previous distance is resolvable
    double horizon = 0.0;
    bool converged = false;
    bool diverged = false;
};

/// Fixed-point iteration of the mild formulation on (0, T]: each iterate
/// propagates v0 and the perturbation forcing evaluated on the previous
/// iterate. Divergence is reported, not thrown.
PicardReport picard_local(const Field& v0, double T, int max_iters,
                          const CurvatureModel& model, int n_time_samples = 17);

} // namespace sdflow
