#include "sdflow/solver.hpp"

#include "sdflow/errors.hpp"
#include "sdflow/fft.hpp"
#include "sdflow/semigroup.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace sdflow {
namespace {

void require_finite_or_blowup(std::span<const double> vals, double time) {
    if (!all_finite(vals)) throw blowup_error(time, "non-finite value produced by step");
}

// Solve a banded system in LAPACK general-band storage.
class BandedMatrix {
public:
    BandedMatrix(int n, int kl, int ku)
        : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(ldab_ * n, 0.0) {}

    double& at(int i, int j) { return ab_[static_cast<size_t>(j) * ldab_ + kl_ + ku_ + i - j]; }

    std::vector<double> solve(std::vector<double> rhs) {
        std::vector<lapack_int> ipiv(n_);
        lapack_int info = LAPACKE_dgbsv(LAPACK_COL_MAJOR, n_, kl_, ku_, 1, ab_.data(),
                                        ldab_, ipiv.data(), rhs.data(), n_);
        if (info != 0)
            throw std::runtime_error("banded solve failed, dgbsv info=" + std::to_string(info));
        return rhs;
    }

private:
    int n_, kl_, ku_, ldab_;
    std::vector<double> ab_;
};

double one_sided_slope_left(const Field& f) {
    const double dx = f.grid().dx();
    return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
}

double one_sided_slope_right(const Field& f) {
    const int n = f.size();
    const double dx = f.grid().dx();
    return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
}

Field step_semi_implicit_u(const Field& u, double dt, const CurvatureModel& model) {
    const auto& g = u.grid();
    const int n = g.n;
    const double dx = g.dx();
    const double dx4 = dx * dx * dx * dx;

    const Field ux = differentiate(u, 1, DerivScheme::central);
    const Field uxx = differentiate(u, 2, DerivScheme::central);
    const Field uxxx = differentiate(u, 3, DerivScheme::central);

    const double slope_left = one_sided_slope_left(u);
    const double slope_right = one_sided_slope_right(u);

    BandedMatrix mat(n, 2, 2);
    std::vector<double> rhs(n, 0.0);

    // u_x = b, u_xx = 0 at the left; mirrored at the right
    mat.at(0, 0) = -3.0; mat.at(0, 1) = 4.0; mat.at(0, 2) = -1.0;
    rhs[0] = 2.0 * dx * slope_left;
    mat.at(1, 0) = 1.0; mat.at(1, 1) = -2.0; mat.at(1, 2) = 1.0;
    rhs[1] = 0.0;
    mat.at(n - 1, n - 1) = 3.0; mat.at(n - 1, n - 2) = -4.0; mat.at(n - 1, n - 3) = 1.0;
    rhs[n - 1] = 2.0 * dx * slope_right;
    mat.at(n - 2, n - 3) = 1.0; mat.at(n - 2, n - 2) = -2.0; mat.at(n - 2, n - 1) = 1.0;
    rhs[n - 2] = 0.0;

    for (int j = 2; j <= n - 3; ++j) {
        const double kappa_arg = uxx[j] / std::pow(1.0 + ux[j] * ux[j], 1.5);
        if (std::abs(kappa_arg) > model.kappa_limit())
            throw blowup_error(u.time(), "curvature beyond model limit in semi-implicit step");
        const double c = dt * coeff_A(ux[j], uxx[j], model) / dx4;
        mat.at(j, j - 2) = c;
        mat.at(j, j - 1) = -4.0 * c;
        mat.at(j, j) = 1.0 + 6.0 * c;
        mat.at(j, j + 1) = -4.0 * c;
        mat.at(j, j + 2) = c;
        rhs[j] = u[j] + dt * coeff_B(ux[j], uxx[j], uxxx[j], model);
    }

    auto w = mat.solve(std::move(rhs));
    require_finite_or_blowup(w, u.time() + dt);
    return u.with_values(std::move(w), u.time() + dt);
}

Field step_semi_implicit_v(const Field& v, double dt, const CurvatureModel& model) {
    const auto& g = v.grid();
    const int n = g.n;
    const double dx = g.dx();
    const double dx4 = dx * dx * dx * dx;

    const Field vx = differentiate(v, 1, DerivScheme::central);
    const Field al = alpha(v, vx, model);
    const Field F = f_pert(v, vx, model);
    const Field al_x = differentiate(al, 1, DerivScheme::central);
    const Field al_xx = differentiate(al, 2, DerivScheme::central);
    const Field vxx = differentiate(v, 2, DerivScheme::central);
    const Field vxxx = differentiate(v, 3, DerivScheme::central);
    const Field Fxx = differentiate(F, 2, DerivScheme::central);

    BandedMatrix mat(n, 2, 2);
    std::vector<double> rhs(n, 0.0);

    // v clamped to the far-field slopes, v_x = 0 at the ends
    mat.at(0, 0) = 1.0;
    rhs[0] = v[0];
    mat.at(1, 0) = -3.0; mat.at(1, 1) = 4.0; mat.at(1, 2) = -1.0;
    rhs[1] = 0.0;
    mat.at(n - 1, n - 1) = 1.0;
    rhs[n - 1] = v[n - 1];
    mat.at(n - 2, n - 1) = 3.0; mat.at(n - 2, n - 2) = -4.0; mat.at(n - 2, n - 3) = 1.0;
    rhs[n - 2] = 0.0;

    for (int j = 2; j <= n - 3; ++j) {
        const double c = dt * (1.0 - al[j]) / dx4;
        mat.at(j, j - 2) = c;
        mat.at(j, j - 1) = -4.0 * c;
        mat.at(j, j) = 1.0 + 6.0 * c;
        mat.at(j, j + 1) = -4.0 * c;
        mat.at(j, j + 2) = c;
        rhs[j] = v[j] + dt * (2.0 * al_x[j] * vxxx[j] + al_xx[j] * vxx[j] + Fxx[j]);
    }

    auto w = mat.solve(std::move(rhs));
    require_finite_or_blowup(w, v.time() + dt);
    return v.with_values(std::move(w), v.time() + dt);
}

} // namespace

void SolverConfig::validate() const {
    if (dt_policy == DtPolicy::fixed && !(dt_fixed > 0.0))
        throw std::invalid_argument("SolverConfig: fixed policy requires dt_fixed > 0");
    if (!(safety > 0.0 && safety <= 1.0))
        throw std::invalid_argument("SolverConfig: safety factor must be in (0, 1]");
    if (!(t_end > 0.0))
        throw std::invalid_argument("SolverConfig: t_end must be positive");
    if (snapshots_per_octave < 1)
        throw std::invalid_argument("SolverConfig: snapshots_per_octave must be >= 1");
    if (dt_policy == DtPolicy::ramped && !(ramp_eta > 0.0))
        throw std::invalid_argument("SolverConfig: ramp_eta must be positive");
}

Field step_if_imex(const Field& v, double dt, const CurvatureModel& model) {
    if (v.grid().kind != GridKind::periodic)
        throw std::invalid_argument("step_if_imex: periodic grid required");
    if (dt < 0.0) throw std::invalid_argument("step_if_imex: dt must be nonnegative");
    if (dt == 0.0) return v;

    const auto& g = v.grid();
    const double k0 = M_PI / g.half_length;

    auto spec = fft::forward(v.values());
    const Field vx = differentiate(v, 1, DerivScheme::spectral);
    const Field vxx = differentiate(v, 2, DerivScheme::spectral);
    const Field al = alpha(v, vx, model);
    const Field F = f_pert(v, vx, model);

    std::vector<double> forcing(v.size());
    for (int j = 0; j < v.size(); ++j) forcing[j] = al[j] * vxx[j] + F[j];
    auto fspec = fft::forward(forcing);

    for (int j = 0; j < static_cast<int>(spec.size()); ++j) {
        const double k = k0 * j;
        const double k4 = k * k * k * k;
        const double decay = std::exp(-dt * k4);
        // int_0^dt (ik)^2 e^{-tau k^4} dtau = -(1 - e^{-dt k^4}) / k^2
        const double psi = (j == 0) ? 0.0 : std::expm1(-dt * k4) / (k * k);
        spec[j] = decay * spec[j] + psi * fspec[j];
    }
    auto out = fft::inverse(spec, g.n);
    require_finite_or_blowup(out, v.time() + dt);
    return v.with_values(std::move(out), v.time() + dt);
}

Field step_semi_implicit(const Field& field, double dt, const CurvatureModel& model) {
    if (field.grid().kind != GridKind::truncated)
        throw std::invalid_argument("step_semi_implicit: truncated grid required");
    if (dt < 0.0) throw std::invalid_argument("step_semi_implicit: dt must be nonnegative");
    if (field.grid().n < 8)
        throw std::invalid_argument("step_semi_implicit: grid too small");
    if (dt == 0.0) return field;
    if (field.label() == "v") return step_semi_implicit_v(field, dt, model);
    return step_semi_implicit_u(field, dt, model);
}

IntegrationResult integrate(const Field& initial, const SolverConfig& config,
                            const CurvatureModel& model) {
    config.validate();
    if (config.scheme == Scheme::if_imex_spectral &&
        initial.grid().kind != GridKind::periodic)
        throw std::invalid_argument("integrate: IMEX scheme requires a periodic grid");
    if (config.scheme == Scheme::semi_implicit_fd &&
        initial.grid().kind != GridKind::truncated)
        throw std::invalid_argument("integrate: semi-implicit scheme requires a truncated grid");

    const bool u_form = initial.label() != "v";
    const DerivScheme dscheme = natural_scheme(initial.grid());
    const double dx = initial.grid().dx();

    double dt_floor;
    if (config.dt_policy == DtPolicy::fixed ||
        (config.dt_policy == DtPolicy::ramped && config.dt_fixed > 0.0)) {
        dt_floor = config.dt_fixed;
    } else if (config.scheme == Scheme::if_imex_spectral) {
        dt_floor = config.safety * std::min(dx * dx * dx * dx, 0.25);
    } else {
        dt_floor = config.safety * dx * dx;
    }

    IntegrationResult result;
    result.trajectory = Trajectory(config.retention);

    std::vector<double> pending_records = config.record_times;
    std::sort(pending_records.begin(), pending_records.end());

    auto record = [&](const Field& f, bool pinned) {
        Field v = u_form ? differentiate(f, 1, dscheme).relabeled("v") : f;
        Field vx = differentiate(v, 1, dscheme);
        result.trajectory.push(f, pinned);
        result.snapshot_times.push_back(f.time());
        result.smallness.push_back(check_smallness(v, vx, config.epsilon0));
        result.mass.push_back(v.mean());
    };

    Field current = initial;
    record(current, true);
    double next_snap = 0.0; // first step sets it
    const double snap_ratio = std::pow(2.0, 1.0 / config.snapshots_per_octave);
    size_t rec_idx = 0;
    double prev_sup = current.sup_norm();

    try {
        while (current.time() < config.t_end * (1.0 - 1e-14)) {
            double dt = dt_floor;
            if (config.dt_policy == DtPolicy::ramped)
                dt = std::max(dt_floor, config.ramp_eta * current.time());

            // land exactly on record times and the horizon
            double target = config.t_end;
            if (rec_idx < pending_records.size())
                target = std::min(target, pending_records[rec_idx]);
            if (current.time() + dt >= target - 1e-14 * std::max(1.0, target))
                dt = target - current.time();
            if (dt <= 0.0) {
                ++rec_idx;
                continue;
            }

            current = (config.scheme == Scheme::if_imex_spectral)
                          ? step_if_imex(current, dt, model)
                          : step_semi_implicit(current, dt, model);

            const double sup = current.sup_norm();
            if (sup > 2.0 * prev_sup && sup > 1e-12)
                throw blowup_error(current.time(), "sup norm doubled within one step");
            prev_sup = std::max(sup, 1e-300);

            bool pinned = false;
            bool take = false;
            if (rec_idx < pending_records.size() &&
                std::abs(current.time() - pending_records[rec_idx]) <=
                    1e-12 * std::max(1.0, pending_records[rec_idx])) {
                pinned = true;
                take = true;
                ++rec_idx;
            }
            if (current.time() >= next_snap || current.time() >= config.t_end * (1.0 - 1e-14)) {
                take = true;
                next_snap = current.time() * snap_ratio;
            }
            if (take) record(current, pinned);
        }
        result.blew_up = false;
    } catch (const blowup_error& e) {
        result.blew_up = true;
        result.diagnostic = BlowupDiagnostic{e.time(), e.reason()};
    }
    return result;
}

PicardReport picard_local(const Field& v0, double T, int max_iters,
                          const CurvatureModel& model, int n_time_samples) {
    if (v0.grid().kind != GridKind::periodic)
        throw std::invalid_argument("picard_local: periodic grid required");
    if (!(T > 0.0)) throw std::invalid_argument("picard_local: T must be positive");
    if (n_time_samples < 3)
        throw std::invalid_argument("picard_local: need at least 3 time samples");

    PicardReport report;
    report.horizon = T;

    const int m = n_time_samples;
    std::vector<double> times(m);
    for (int j = 0; j < m; ++j) times[j] = T * j / (m - 1);

    // start from the semigroup evolution of v0
    std::vector<Field> base;
    base.reserve(m);
    for (int j = 0; j < m; ++j) {
        Field f = apply_semigroup(v0, times[j]);
        base.push_back(Field(v0.grid(), std::vector<double>(f.values().begin(), f.values().end()),
                             times[j], "v"));
    }
    std::vector<Field> cur = base;

    if (v0.sup_norm() == 0.0) {
        report.converged = true;
        report.distances.clear();
        return report;
    }

    const double eps_floor = 10.0 * std::numeric_limits<double>::epsilon();
    int rising = 0;
    for (int it = 0; it < max_iters; ++it) {
        // forcing on the previous iterate
        std::vector<Field> forcing;
        forcing.reserve(m);
        for (int j = 0; j < m; ++j) {
            const Field vx = differentiate(cur[j], 1, DerivScheme::spectral);
            const Field vxx = differentiate(cur[j], 2, DerivScheme::spectral);
            const Field al = alpha(cur[j], vx, model);
            const Field F = f_pert(cur[j], vx, model);
            std::vector<double> g(cur[j].size());
            for (int i = 0; i < cur[j].size(); ++i) g[i] = al[i] * vxx[i] + F[i];
            forcing.push_back(Field(v0.grid(), std::move(g), times[j], "g"));
        }

        std::vector<Field> next;
        next.reserve(m);
        next.push_back(base[0]);
        for (int j = 1; j < m; ++j) {
            std::vector<Field> head(forcing.begin(), forcing.begin() + j + 1);
            Field duh = duhamel(head, times[j], 2);
            std::vector<double> vals(base[j].size());
            for (int i = 0; i < base[j].size(); ++i) vals[i] = base[j][i] + duh[i];
            next.push_back(Field(v0.grid(), std::move(vals), times[j], "v"));
        }

        double dist = 0.0;
        for (int j = 0; j < m; ++j) {
            for (int i = 0; i < next[j].size(); ++i)
                dist = std::max(dist, std::abs(next[j][i] - cur[j][i]));
        }
        if (!report.distances.empty() && report.distances.back() > eps_floor) {
            double factor = dist / report.distances.back();
            report.factors.push_back(factor);
            rising = factor >= 1.0 ? rising + 1 : 0;
        }
        report.distances.push_back(dist);
        cur = std::move(next);

        if (dist <= eps_floor) {
            report.converged = true;
            break;
        }
        if (rising >= 3) {
            report.diverged = true;
            break;
        }
    }
    return report;
}

} // namespace sdflow
