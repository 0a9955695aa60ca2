#pragma once

#include "sdflow/derivatives.hpp"
#include "sdflow/model.hpp"
#include "sdflow/trajectory.hpp"

#include <vector>

namespace sdflow {

/// How m >= 1 terms of a space-time norm obtain time derivatives.
/// Applying the equation's right side is exact in the model and avoids
/// amplifying snapshot spacing noise; differencing needs >= 3 snapshots.
enum class TimeDerivativeSource { differencing, biharmonic, flow };

enum class NormTermKind { sup, space_seminorm, time_seminorm };

struct NormTerm {
    int ell = 0;
    int m = 0;
    NormTermKind kind = NormTermKind::sup;
    double contribution = 0.0; // weighted; report totals sum these
};

struct NormReport {
    double window_a = 0.0;
    double window_b = 0.0;
    double lambda = 0.0;
    std::vector<NormTerm> terms;
    double total = 0.0;
};

/// Discrete spatial Hoelder seminorm, lambda in (0, 1]: max over grid pairs
/// of |f(x)-f(y)| / d(x,y)^lambda. Periodic grids use the periodic distance
/// restricted to separations <= L/2. A lower bound of the continuum value.
double holder_seminorm_space(const Field& field, double lambda);

/// Max over snapshot pairs of |f(x,s)-f(x,t)| / |s-t|^mu at one column.
double holder_seminorm_time(const std::vector<Field>& window, int x_index, double mu);

/// Same, then max over columns.
double holder_seminorm_time_max(const std::vector<Field>& window, double mu);

/// Snapshots of a field and (optionally) its time derivative on (a, b].
struct SpaceTimeWindow {
    double a = 0.0;
    double b = 0.0;
    std::vector<Field> fields;
    std::vector<Field> time_derivs; // empty, or one per field
};

/// Parabolic Hoelder norm of the window data with weight n = 4; scaled
/// variant carries (b-a)^{ell/4+m} on sup terms and (b-a)^{lambda/4} on the
/// top seminorm. Supports lambda < 8 (time-derivative order m <= 1).
NormReport scaled_norm_window(const SpaceTimeWindow& window, double lambda,
                              DerivScheme scheme, bool scaled = true);

/// Norm over the dyadic window (t/2, t] of a trajectory.
NormReport scaled_norm(const Trajectory& traj, double t, double lambda,
                       DerivScheme scheme,
                       TimeDerivativeSource source = TimeDerivativeSource::differencing,
                       const CurvatureModel* model = nullptr);

struct ZNormReport {
    double total = 0.0;         // sup over evaluation times
    double supremizing_t = 0.0;
    std::vector<double> times;  // evaluation times
    std::vector<double> values; // Z(t) per time
    NormReport v_part;          // parts at the supremizing time
    NormReport vx_part;
};

/// Z^k norm of a v-trajectory: sup over t of
///   ||v||'_{(t/2,t], k+mu} + (1+t)^{1/4} ||v_x||'_{(t/2,t], k-1+mu}.
ZNormReport z_norm(const Trajectory& v_traj, int k, double mu, DerivScheme scheme,
                   TimeDerivativeSource source = TimeDerivativeSource::differencing,
                   const CurvatureModel* model = nullptr);

struct DecayFit {
    double t1 = 0.0, t2 = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // RMS of log-residuals
};

/// Least-squares slope of log(value) against log(t) over [t1, t2].
/// Requires >= 5 points in the window, all values positive.
DecayFit decay_fit(const std::vector<std::pair<double, double>>& series,
                   double t1, double t2);

} // namespace sdflow
