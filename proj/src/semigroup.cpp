#include "sdflow/semigroup.hpp"

#include "sdflow/derivatives.hpp"
#include "sdflow/fft.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace sdflow {
namespace {

Field semigroup_periodic(const Field& field, double t) {
    auto spec = fft::forward(field.values());
    const double k0 = M_PI / field.grid().half_length;
    for (int j = 0; j < static_cast<int>(spec.size()); ++j) {
        const double k = k0 * j;
        spec[j] *= std::exp(-t * k * k * k * k);
    }
    return field.with_values(fft::inverse(spec, field.grid().n), field.time());
}

Field semigroup_truncated(const Field& field, double t, const KernelTable& table) {
    const auto& g = field.grid();
    const int n = g.n;
    const double dx = g.dx();
    const double s = std::pow(t, -0.25);
    const auto v = field.values();
    const double left = v.front(), right = v.back();
    const double xl = g.node(0), xr = g.node(n - 1);

    std::vector<double> out(n);
    const double reach = table.range() / s; // kernel support in x units
    for (int i = 0; i < n; ++i) {
        const double xi = g.node(i);
        int jlo = std::max(0, static_cast<int>(std::floor((xi - reach - xl) / dx)));
        int jhi = std::min(n - 1, static_cast<int>(std::ceil((xi + reach - xl) / dx)));
        double acc = 0.0;
        for (int j = jlo; j <= jhi; ++j) {
            double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            acc += w * table.bbar(s * (xi - g.node(j))) * v[j];
        }
        acc *= s * dx;
        // constant extension beyond the grid, integrated exactly
        acc += left * (1.0 - table.cdf(s * (xi - xl)));
        acc += right * table.cdf(s * (xi - xr));
        out[i] = acc;
    }
    return field.with_values(std::move(out), field.time());
}

} // namespace

Field apply_semigroup(const Field& field, double t, const KernelTable& table) {
    if (t < 0.0) throw std::invalid_argument("apply_semigroup: t must be nonnegative");
    if (t == 0.0) return field;
    if (field.grid().kind == GridKind::periodic) return semigroup_periodic(field, t);
    return semigroup_truncated(field, t, table);
}

Field duhamel(const std::vector<Field>& forcing, double t, int deriv,
              const KernelTable& table) {
    if (deriv < 0 || deriv > 2)
        throw std::invalid_argument("duhamel: deriv must be in 0..2");
    if (forcing.empty())
        throw std::invalid_argument("duhamel: no forcing samples");
    for (size_t i = 1; i < forcing.size(); ++i)
        if (!(forcing[i].time() > forcing[i - 1].time()))
            throw std::invalid_argument("duhamel: samples must be strictly increasing in time");
    const double span_tol = 1e-9 * std::max(1.0, t);
    if (forcing.front().time() > span_tol || forcing.back().time() < t - span_tol)
        throw std::invalid_argument("duhamel: samples must span [0, t]");

    const auto& g = forcing.front().grid();

    if (g.kind == GridKind::periodic) {
        const int n = g.n;
        const double k0 = M_PI / g.half_length;
        const size_t m = forcing.size();
        std::vector<std::complex<double>> acc(n / 2 + 1, 0.0);
        const std::complex<double> iu(0.0, 1.0);

        // trapezoid over [s_0, s_{m-2}] (the last subinterval is analytic)
        if (m >= 3) {
            for (size_t i = 0; i + 1 < m; ++i) {
                double w;
                if (i == 0)
                    w = 0.5 * (forcing[1].time() - forcing[0].time());
                else if (i + 2 == m)
                    w = 0.5 * (forcing[i].time() - forcing[i - 1].time());
                else
                    w = 0.5 * (forcing[i + 1].time() - forcing[i - 1].time());
                auto spec = fft::forward(forcing[i].values());
                const double s = forcing[i].time();
                for (int j = 0; j < n / 2 + 1; ++j) {
                    const double k = k0 * j;
                    std::complex<double> mult =
                        std::pow(iu * k, deriv) * std::exp(-(t - s) * k * k * k * k);
                    acc[j] += w * mult * spec[j];
                }
            }
        }

        // final subinterval [s_{m-2}, s_{m-1}] with frozen forcing:
        // multiplier int_0^D (ik)^deriv e^{-tau k^4} dtau
        if (m >= 2) {
            const double delta = forcing[m - 1].time() - forcing[m - 2].time();
            auto spec = fft::forward(forcing[m - 2].values());
            for (int j = 0; j < n / 2 + 1; ++j) {
                const double k = k0 * j;
                const double k4 = k * k * k * k;
                std::complex<double> mult;
                if (j == 0) {
                    mult = (deriv == 0) ? delta : 0.0;
                } else {
                    mult = std::pow(iu * k, deriv) * (-std::expm1(-delta * k4)) / k4;
                }
                acc[j] += mult * spec[j];
            }
        }
        if (deriv % 2 == 1) acc.back() = 0.0;
        return Field(g, fft::inverse(acc, n), t, forcing.front().label());
    }

    // Truncated grid: the propagated integrand d^deriv e^{-(t-s)d^4} g(s) is
    // finite at s = t for smooth samples, so a plain trapezoid including the
    // endpoint applies.
    const int n = g.n;
    std::vector<double> out(n, 0.0);
    const size_t m = forcing.size();
    for (size_t i = 0; i < m; ++i) {
        double w;
        if (m == 1)
            w = t;
        else if (i == 0)
            w = 0.5 * (forcing[1].time() - forcing[0].time());
        else if (i + 1 == m)
            w = 0.5 * (forcing[i].time() - forcing[i - 1].time());
        else
            w = 0.5 * (forcing[i + 1].time() - forcing[i - 1].time());
        Field prop = apply_semigroup(forcing[i], t - forcing[i].time(), table);
        if (deriv > 0) prop = differentiate(prop, deriv, DerivScheme::central);
        for (int j = 0; j < n; ++j) out[j] += w * prop[j];
    }
    return Field(g, std::move(out), t, forcing.front().label());
}

} // namespace sdflow
