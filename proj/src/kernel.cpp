#include "sdflow/kernel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdflow {
namespace {

using gk = boost::math::quadrature::gauss_kronrod<double, 15>;

double profile_integral(double y, int ell, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("kernel_profile: tol must be positive");
    // exp(-xi^4) < tol/100 beyond xi_max; the xi^ell weight shifts the cut
    // slightly, covered by the extra /100 margin below.
    const double xi_max = std::pow(std::log(100.0 / (tol / 100.0)), 0.25);
    const double phase = ell * M_PI / 2.0;
    auto integrand = [=](double xi) {
        return std::pow(xi, ell) * std::exp(-std::pow(xi, 4)) * std::cos(y * xi + phase);
    };
    double err = 0.0;
    double val = gk::integrate(integrand, 0.0, xi_max, 12, tol / 10.0, &err);
    if (!(err <= 10.0 * tol) || !std::isfinite(val))
        throw std::runtime_error("kernel_profile: quadrature did not converge to tol");
    return val / M_PI;
}

} // namespace

double kernel_profile(double y, double tol) { return profile_integral(y, 0, tol); }

double kernel_profile_deriv(double y, int ell, double tol) {
    if (ell < 0 || ell > 4)
        throw std::invalid_argument("kernel_profile_deriv: ell must be in 0..4");
    return profile_integral(y, ell, tol);
}

double kernel(double x, double t, double tol) {
    if (!(t > 0.0)) throw std::invalid_argument("kernel: t must be positive");
    const double s = std::pow(t, -0.25);
    return s * kernel_profile(s * x, tol);
}

KernelTable::KernelTable(double range, double step, double tol)
    : range_(range), step_(step), tol_(tol) {
    const int m = static_cast<int>(std::round(range / step));
    ys_.resize(m + 1);
    vals_.resize(m + 1);
    dvals_.resize(m + 1);
    for (int i = 0; i <= m; ++i) {
        ys_[i] = i * step;
        vals_[i] = kernel_profile(ys_[i], tol);
        dvals_[i] = kernel_profile_deriv(ys_[i], 1, tol);
    }
    // cumulative integral of bbar from 0, Simpson on pairs of intervals
    cum_.assign(m + 1, 0.0);
    for (int i = 2; i <= m; i += 2) {
        cum_[i] = cum_[i - 2] + step / 3.0 * (vals_[i - 2] + 4.0 * vals_[i - 1] + vals_[i]);
        cum_[i - 1] = cum_[i - 2] +
                      step / 12.0 * (5.0 * vals_[i - 2] + 8.0 * vals_[i - 1] - vals_[i]);
    }
    if (m % 2 == 1)
        cum_[m] = cum_[m - 1] + step / 2.0 * (vals_[m - 1] + vals_[m]);
}

double KernelTable::interp(const std::vector<double>& table, double y) const {
    const double a = std::abs(y);
    if (a >= range_) return 0.0;
    const double s = a / step_;
    int j = static_cast<int>(std::floor(s));
    const int m = static_cast<int>(table.size()) - 1;
    j = std::clamp(j, 1, m - 3 + 1); // keep 4-point stencil inside
    if (j < 1) j = 1;
    const double u = s - j;
    // Catmull-Rom through table[j-1..j+2]
    const double p0 = table[j - 1], p1 = table[j], p2 = table[j + 1],
                 p3 = table[std::min(j + 2, m)];
    return p1 + 0.5 * u * (p2 - p0 + u * (2 * p0 - 5 * p1 + 4 * p2 - p3 +
                                          u * (3 * (p1 - p2) + p3 - p0)));
}

double KernelTable::bbar(double y) const { return interp(vals_, y); }

double KernelTable::dbbar(double y) const {
    double v = interp(dvals_, y);
    return y < 0 ? -v : v; // bbar is even, its derivative odd
}

double KernelTable::cdf(double z) const {
    if (z <= -range_) return 0.0;
    if (z >= range_) return 1.0;
    double half = interp(cum_, z);
    return z >= 0 ? 0.5 + half : 0.5 - half;
}

double KernelTable::mass() const {
    double acc = 0.0;
    const int m = static_cast<int>(vals_.size()) - 1;
    for (int i = 1; i <= m; ++i) acc += 0.5 * (vals_[i - 1] + vals_[i]) * step_;
    return 2.0 * acc; // even symmetry
}

const KernelTable& default_kernel_table() {
    static const KernelTable table;
    return table;
}

KernelBoundReport fit_kernel_bound(int ell) {
    if (ell < 0 || ell > 4)
        throw std::invalid_argument("fit_kernel_bound: ell must be in 0..4");
    const double step = 1.0 / 64.0;
    const int m = static_cast<int>(std::round(12.0 / step));
    std::vector<double> ys(m + 1), av(m + 1);
    for (int i = 0; i <= m; ++i) {
        ys[i] = i * step;
        av[i] = std::abs(kernel_profile_deriv(ys[i], ell, 1e-12));
    }

    // Envelope samples: local maxima of |d^ell bbar| plus the global max.
    std::vector<std::pair<double, double>> peaks; // (y^{4/3}, log|value|)
    int imax = static_cast<int>(std::max_element(av.begin(), av.end()) - av.begin());
    peaks.emplace_back(std::pow(ys[imax], 4.0 / 3.0), std::log(av[imax]));
    for (int i = 1; i < m; ++i) {
        if (av[i] > av[i - 1] && av[i] >= av[i + 1] && av[i] > 1e-300 && i != imax)
            peaks.emplace_back(std::pow(ys[i], 4.0 / 3.0), std::log(av[i]));
    }
    if (peaks.size() < 3)
        throw std::runtime_error("fit_kernel_bound: not enough envelope peaks");

    // Least squares log|peak| = log C0 - omega * y^{4/3}
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, v] : peaks) { sx += x; sy += v; sxx += x * x; sxy += x * v; }
    const double np = static_cast<double>(peaks.size());
    const double slope = (np * sxy - sx * sy) / (np * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / np;
    const double omega = -slope;

    double rss = 0.0;
    for (auto [x, v] : peaks) {
        double r = v - (intercept + slope * x);
        rss += r * r;
    }
    const double residual = std::sqrt(rss / np);

    KernelBoundReport report;
    report.ell = ell;
    report.omega = omega;
    report.residual = residual;
    if (!(omega > 0.0))
        throw std::runtime_error("fit_kernel_bound: fitted omega not positive");
    if (!(residual < 2.0))
        throw std::runtime_error("fit_kernel_bound: envelope fit residual too large");

    // Raise C until the envelope dominates every tabulated point.
    double c = std::exp(intercept);
    for (int i = 0; i <= m; ++i) {
        double env = std::exp(-omega * std::pow(ys[i], 4.0 / 3.0));
        if (av[i] > c * env) c = av[i] / env;
    }
    report.C = c;
    return report;
}

} // namespace sdflow
