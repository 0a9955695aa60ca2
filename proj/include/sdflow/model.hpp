#pragma once

#include <functional>
#include <string>
#include <vector>

namespace sdflow {

/// Curvature response f with f(0) = 0, f'(0) = 1, f' > 0 on the probed
/// range. Only f, f', f'' enter the flow. The built-in exponential model
/// stores e^r - 1; the constant shift is immaterial because only spatial
/// derivatives of f(-kappa) enter the equation.
class CurvatureModel {
public:
    const std::string& name() const { return name_; }
    double f(double r) const { return f_(r); }
    double fprime(double r) const { return fp_(r); }
    double fsecond(double r) const { return fpp_(r); }

    /// |kappa| beyond which evaluation is declared a blow-up.
    double kappa_limit() const { return kappa_limit_; }

    static CurvatureModel linear();
    static CurvatureModel exponential();

    /// Tabulated (r, f'(r)) pairs, monotone cubic interpolation; f'' by
    /// differentiating the interpolant, f by integrating it from 0.
    /// Requires f' > 0 at all nodes and f'(0) = 1 (a node at r = 0).
    static CurvatureModel custom(std::string name, std::vector<double> r,
                                 std::vector<double> fprime);

    static CurvatureModel make(std::string name, std::function<double(double)> f,
                               std::function<double(double)> fp,
                               std::function<double(double)> fpp, double kappa_limit);

private:
    CurvatureModel() = default;

    std::string name_;
    std::function<double(double)> f_, fp_, fpp_;
    double kappa_limit_ = 0.0;
};

/// f_sigma(r) = sigma f(r / sigma); preserves f(0) = 0 and f'(0) = 1 and
/// tends to the identity as sigma grows.
CurvatureModel scaled_model(const CurvatureModel& model, double sigma);

/// Model by config name: "linear" or "exponential".
CurvatureModel model_by_name(const std::string& name);

} // namespace sdflow
