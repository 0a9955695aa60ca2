#include "sdflow/norms.hpp"

#include "sdflow/flow_ops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sdflow {
namespace {

double window_sup(const std::vector<Field>& fields) {
    double m = 0.0;
    for (const auto& f : fields) m = std::max(m, f.sup_norm());
    return m;
}

Field time_derivative_field(const Field& f, TimeDerivativeSource source,
                            DerivScheme scheme, const CurvatureModel* model) {
    switch (source) {
    case TimeDerivativeSource::biharmonic: {
        Field d4 = differentiate(f, 4, scheme);
        std::vector<double> vals(d4.size());
        for (int j = 0; j < d4.size(); ++j) vals[j] = -d4[j];
        return Field(f.grid(), std::move(vals), f.time(), "f_t");
    }
    case TimeDerivativeSource::flow: {
        if (!model)
            throw std::invalid_argument("norms: flow time-derivative source needs a model");
        return time_derivative_from_v(f, *model, scheme).relabeled("f_t");
    }
    default:
        throw std::invalid_argument("norms: differencing handled by the window builder");
    }
}

std::vector<Field> differencing_time_derivs(const std::vector<Field>& fields) {
    const size_t s = fields.size();
    if (s < 3)
        throw std::invalid_argument("norms: differencing time derivatives need >= 3 snapshots");
    std::vector<Field> out;
    out.reserve(s);
    for (size_t i = 0; i < s; ++i) {
        size_t lo = i == 0 ? 0 : (i + 1 == s ? s - 3 : i - 1);
        double ts[3] = {fields[lo].time(), fields[lo + 1].time(), fields[lo + 2].time()};
        auto w = fd_weights(fields[i].time(), std::span<const double>(ts, 3), 1);
        std::vector<double> vals(fields[i].size(), 0.0);
        for (int q = 0; q < 3; ++q)
            for (int j = 0; j < fields[i].size(); ++j)
                vals[j] += w[q] * fields[lo + q][j];
        out.push_back(Field(fields[i].grid(), std::move(vals), fields[i].time(), "f_t"));
    }
    return out;
}

} // namespace

double holder_seminorm_space(const Field& field, double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::invalid_argument("holder_seminorm_space: lambda must be in (0, 1]");
    const auto v = field.values();
    const int n = field.size();
    const double dx = field.grid().dx();
    const bool periodic = field.grid().kind == GridKind::periodic;
    const int max_lag = periodic ? n / 4 : n - 1;

    double lo = v[0], hi = v[0];
    for (double x : v) { lo = std::min(lo, x); hi = std::max(hi, x); }
    const double range = hi - lo;
    if (range == 0.0) return 0.0;

    double best = 0.0;
    for (int lag = 1; lag <= max_lag; ++lag) {
        const double d = std::pow(lag * dx, lambda);
        if (range / d <= best) break; // no larger separation can win
        double md = 0.0;
        if (periodic) {
            for (int i = 0; i < n; ++i)
                md = std::max(md, std::abs(v[(i + lag) % n] - v[i]));
        } else {
            for (int i = 0; i + lag < n; ++i)
                md = std::max(md, std::abs(v[i + lag] - v[i]));
        }
        best = std::max(best, md / d);
    }
    return best;
}

double holder_seminorm_time(const std::vector<Field>& window, int x_index, double mu) {
    if (window.size() < 2)
        throw std::invalid_argument("holder_seminorm_time: need at least 2 snapshots");
    if (!(mu >= 0.0 && mu < 1.0))
        throw std::invalid_argument("holder_seminorm_time: mu must be in [0, 1)");
    double best = 0.0;
    for (size_t i = 0; i < window.size(); ++i) {
        if (mu == 0.0) {
            best = std::max(best, std::abs(window[i][x_index]));
            continue;
        }
        for (size_t j = i + 1; j < window.size(); ++j) {
            double dt = std::abs(window[j].time() - window[i].time());
            best = std::max(best, std::abs(window[j][x_index] - window[i][x_index]) /
                                      std::pow(dt, mu));
        }
    }
    return best;
}

double holder_seminorm_time_max(const std::vector<Field>& window, double mu) {
    if (window.size() < 2)
        throw std::invalid_argument("holder_seminorm_time_max: need at least 2 snapshots");
    double best = 0.0;
    for (int x = 0; x < window.front().size(); ++x)
        best = std::max(best, holder_seminorm_time(window, x, mu));
    return best;
}

NormReport scaled_norm_window(const SpaceTimeWindow& window, double lambda,
                              DerivScheme scheme, bool scaled) {
    if (window.fields.empty())
        throw std::invalid_argument("scaled_norm_window: empty window");
    if (!(lambda >= 0.0 && lambda < 8.0))
        throw std::invalid_argument("scaled_norm_window: lambda must be in [0, 8)");
    if (!window.time_derivs.empty() && window.time_derivs.size() != window.fields.size())
        throw std::invalid_argument("scaled_norm_window: time derivative count mismatch");

    const double len = window.b - window.a;
    if (!(len > 0.0))
        throw std::invalid_argument("scaled_norm_window: degenerate window");

    const int lam_floor = static_cast<int>(std::floor(lambda));
    const double frac = lambda - lam_floor;

    // derivative fields per (ell, m)
    std::map<std::pair<int, int>, std::vector<Field>> derivs;
    auto fields_for = [&](int ell, int m) -> const std::vector<Field>& {
        auto key = std::make_pair(ell, m);
        auto it = derivs.find(key);
        if (it != derivs.end()) return it->second;
        std::vector<Field> out;
        const std::vector<Field>& base = (m == 0) ? window.fields : window.time_derivs;
        if (m == 1 && window.time_derivs.empty())
            throw std::invalid_argument("scaled_norm_window: m=1 term requires time derivatives");
        out.reserve(base.size());
        for (const auto& f : base)
            out.push_back(ell == 0 ? f : differentiate(f, ell, scheme));
        return derivs.emplace(key, std::move(out)).first->second;
    };

    NormReport report;
    report.window_a = window.a;
    report.window_b = window.b;
    report.lambda = lambda;

    auto add = [&](int ell, int m, NormTermKind kind, double raw, double weight) {
        report.terms.push_back(NormTerm{ell, m, kind, raw * weight});
    };

    // sup terms: ell + 4m <= lambda
    for (int m = 0; 4 * m <= lambda; ++m) {
        if (m > 1)
            throw std::invalid_argument("scaled_norm_window: time-derivative order > 1 unsupported");
        for (int ell = 0; ell + 4 * m <= lambda; ++ell) {
            double w = scaled ? std::pow(len, ell / 4.0 + m) : 1.0;
            add(ell, m, NormTermKind::sup, window_sup(fields_for(ell, m)), w);
        }
    }

    const double top_w = scaled ? std::pow(len, lambda / 4.0) : 1.0;

    // spatial seminorm terms: ell + 4m = floor(lambda), exponent frac
    if (frac > 0.0) {
        for (int m = 0; 4 * m <= lam_floor; ++m) {
            int ell = lam_floor - 4 * m;
            if (m > 1) continue;
            double raw = 0.0;
            for (const auto& f : fields_for(ell, m))
                raw = std::max(raw, holder_seminorm_space(f, frac));
            add(ell, m, NormTermKind::space_seminorm, raw, top_w);
        }
    }

    // time seminorm terms: lambda - 4 < ell + 4m <= lambda, exponent (lambda-ell-4m)/4
    for (int m = 0; 4 * m <= lambda; ++m) {
        if (m > 1) continue;
        for (int ell = 0; ell + 4 * m <= lambda; ++ell) {
            if (ell + 4 * m <= lambda - 4.0) continue;
            double mu_t = (lambda - ell - 4 * m) / 4.0;
            if (mu_t == 0.0 || mu_t >= 1.0) continue;
            const auto& fs = fields_for(ell, m);
            if (fs.size() < 2)
                throw std::invalid_argument("scaled_norm_window: time seminorm needs >= 2 snapshots");
            add(ell, m, NormTermKind::time_seminorm, holder_seminorm_time_max(fs, mu_t), top_w);
        }
    }

    for (const auto& t : report.terms) report.total += t.contribution;
    return report;
}

namespace {

SpaceTimeWindow build_window(const Trajectory& traj, double a, double b, double lambda,
                             DerivScheme scheme, TimeDerivativeSource source,
                             const CurvatureModel* model) {
    SpaceTimeWindow w;
    w.a = a;
    w.b = b;
    w.fields = traj.window(a, b);
    if (w.fields.empty())
        throw std::invalid_argument("scaled_norm: no snapshots in window");
    if (lambda >= 4.0) {
        if (source == TimeDerivativeSource::differencing) {
            w.time_derivs = differencing_time_derivs(w.fields);
        } else {
            w.time_derivs.reserve(w.fields.size());
            for (const auto& f : w.fields)
                w.time_derivs.push_back(time_derivative_field(f, source, scheme, model));
        }
    }
    return w;
}

} // namespace

NormReport scaled_norm(const Trajectory& traj, double t, double lambda, DerivScheme scheme,
                       TimeDerivativeSource source, const CurvatureModel* model) {
    auto w = build_window(traj, t / 2.0, t, lambda, scheme, source, model);
    return scaled_norm_window(w, lambda, scheme, true);
}

ZNormReport z_norm(const Trajectory& v_traj, int k, double mu, DerivScheme scheme,
                   TimeDerivativeSource source, const CurvatureModel* model) {
    if (k < 1) throw std::invalid_argument("z_norm: k must be >= 1");
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("z_norm: mu must be in (0, 1)");
    if (v_traj.snapshots().size() < 3)
        throw std::invalid_argument("z_norm: trajectory too short");
    if (!(v_traj.t_end() >= 2.0 * std::max(v_traj.t_begin(), 1e-300)))
        throw std::invalid_argument("z_norm: trajectory spans less than one octave");

    ZNormReport rep;
    for (const auto& snap : v_traj.snapshots()) {
        const double t = snap.time();
        if (!(t > 0.0)) continue;
        auto in_window = v_traj.window(t / 2.0, t);
        if (in_window.size() < 2) continue;

        SpaceTimeWindow wv = build_window(v_traj, t / 2.0, t, k + mu, scheme, source, model);

        SpaceTimeWindow wx;
        wx.a = t / 2.0;
        wx.b = t;
        for (const auto& f : wv.fields) wx.fields.push_back(differentiate(f, 1, scheme));
        for (const auto& f : wv.time_derivs)
            wx.time_derivs.push_back(differentiate(f, 1, scheme));

        NormReport nv = scaled_norm_window(wv, k + mu, scheme, true);
        NormReport nx = scaled_norm_window(wx, k - 1 + mu, scheme, true);
        const double z = nv.total + std::pow(1.0 + t, 0.25) * nx.total;

        rep.times.push_back(t);
        rep.values.push_back(z);
        if (z > rep.total) {
            rep.total = z;
            rep.supremizing_t = t;
            rep.v_part = nv;
            rep.vx_part = nx;
        }
    }
    if (rep.times.empty())
        throw std::invalid_argument("z_norm: no evaluable windows");
    return rep;
}

DecayFit decay_fit(const std::vector<std::pair<double, double>>& series,
                   double t1, double t2) {
    if (!(t1 < t2)) throw std::invalid_argument("decay_fit: need t1 < t2");
    std::vector<std::pair<double, double>> pts;
    for (auto [t, v] : series) {
        if (t < t1 || t > t2) continue;
        if (!(v > 0.0))
            throw std::invalid_argument("decay_fit: values must be positive in the window");
        pts.emplace_back(std::log(t), std::log(v));
    }
    if (pts.size() < 5)
        throw std::invalid_argument("decay_fit: need at least 5 points in the window");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) { sx += x; sy += y; sxx += x * x; sxy += x * y; }
    const double n = static_cast<double>(pts.size());
    DecayFit fit;
    fit.t1 = t1;
    fit.t2 = t2;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    double rss = 0.0;
    for (auto [x, y] : pts) {
        double r = y - (fit.intercept + fit.slope * x);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

} // namespace sdflow
