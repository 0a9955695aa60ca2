#pragma once

#include <vector>

namespace sdflow {

/// Kernel profile of the biharmonic heat semigroup,
/// bbar(y) = (1/pi) int_0^inf exp(-xi^4) cos(y xi) dxi,
/// by adaptive quadrature with absolute error <= tol. The integrand is
/// truncated where exp(-xi^4) < tol/100.
double kernel_profile(double y, double tol = 1e-10);

/// d^ell/dy^ell of the profile, ell in 0..4.
double kernel_profile_deriv(double y, int ell, double tol = 1e-10);

/// Space-time kernel b(x,t) = t^{-1/4} bbar(t^{-1/4} x); throws for t <= 0.
double kernel(double x, double t, double tol = 1e-10);

/// Tabulated profile, derivative, and cumulative mass on [-range, range]
/// with cubic interpolation. Built once and shared read-only.
class KernelTable {
public:
    explicit KernelTable(double range = 16.0, double step = 1.0 / 64.0, double tol = 1e-11);

    double bbar(double y) const;   // 0 outside the tabulated range
    double dbbar(double y) const;
    double cdf(double z) const;    // int_{-inf}^z bbar, clamped tails
    double range() const { return range_; }
    double step() const { return step_; }
    double mass() const;           // trapezoid integral over the table
    double quadrature_tol() const { return tol_; }

    const std::vector<double>& ys() const { return ys_; }
    const std::vector<double>& values() const { return vals_; }

private:
    double interp(const std::vector<double>& table, double y) const;

    double range_, step_, tol_;
    std::vector<double> ys_;      // 0..range
    std::vector<double> vals_;    // bbar on ys_
    std::vector<double> dvals_;   // bbar' on ys_
    std::vector<double> cum_;     // int_0^y bbar
};

const KernelTable& default_kernel_table();

/// Fitted envelope |d^ell bbar| <= C exp(-omega y^{4/3}) on y in [0, 12].
struct KernelBoundReport {
    int ell = 0;
    double C = 0.0;
    double omega = 0.0;
    double residual = 0.0;
};

/// Tabulates |d^ell bbar| on [0, 12], fits the log-envelope against
/// -omega y^{4/3}, and chooses C so the envelope dominates at every
/// tabulated point. Throws if the fit degenerates (omega <= 0) or the
/// residual exceeds an internal sanity threshold.
KernelBoundReport fit_kernel_bound(int ell);

} // namespace sdflow
