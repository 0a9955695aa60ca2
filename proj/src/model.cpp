#include "sdflow/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace sdflow {
namespace {

// Fritsch-Carlson monotone cubic interpolant of tabulated f' values.
struct Pchip {
    std::vector<double> x, y, d; // nodes, values, node slopes

    Pchip(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)) {
        const size_t n = x.size();
        if (n < 3) throw std::invalid_argument("custom model: need at least 3 nodes");
        for (size_t i = 1; i < n; ++i)
            if (!(x[i] > x[i - 1]))
                throw std::invalid_argument("custom model: r nodes must strictly increase");
        std::vector<double> h(n - 1), s(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) {
            h[i] = x[i + 1] - x[i];
            s[i] = (y[i + 1] - y[i]) / h[i];
        }
        d.assign(n, 0.0);
        d[0] = s[0];
        d[n - 1] = s[n - 2];
        for (size_t i = 1; i + 1 < n; ++i) {
            if (s[i - 1] * s[i] <= 0.0) {
                d[i] = 0.0;
            } else {
                double w1 = 2 * h[i] + h[i - 1];
                double w2 = h[i] + 2 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
            }
        }
    }

    // value and first derivative of the interpolant; constant extension
    // beyond the table.
    std::pair<double, double> eval(double t) const {
        const size_t n = x.size();
        if (t <= x[0]) return {y[0], 0.0};
        if (t >= x[n - 1]) return {y[n - 1], 0.0};
        size_t i = std::upper_bound(x.begin(), x.end(), t) - x.begin() - 1;
        double h = x[i + 1] - x[i];
        double u = (t - x[i]) / h;
        double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
        double h10 = u * (1 - u) * (1 - u);
        double h01 = u * u * (3 - 2 * u);
        double h11 = u * u * (u - 1);
        double val = h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1];
        double dh00 = 6 * u * (u - 1) / h;
        double dh10 = (3 * u * u - 4 * u + 1);
        double dh01 = -6 * u * (u - 1) / h;
        double dh11 = (3 * u * u - 2 * u);
        double der = dh00 * y[i] + dh10 * d[i] + dh01 * y[i + 1] + dh11 * d[i + 1];
        return {val, der};
    }

    // integral of the interpolant from 0 to t (piecewise exact)
    double integral_from_zero(double t) const {
        auto seg = [&](size_t i, double u0, double u1) {
            double h = x[i + 1] - x[i];
            // exact integrals of the Hermite basis
            auto I = [&](double u) {
                double u2 = u * u, u3 = u2 * u, u4 = u3 * u;
                double i00 = u - u3 + u4 / 2.0;
                double i10 = u2 / 2.0 - 2.0 * u3 / 3.0 + u4 / 4.0;
                double i01 = u3 - u4 / 2.0;
                double i11 = u4 / 4.0 - u3 / 3.0;
                return h * (i00 * y[i] + i10 * h * d[i] + i01 * y[i + 1] + i11 * h * d[i + 1]);
            };
            return I(u1) - I(u0);
        };
        const size_t n = x.size();
        double lo = 0.0, hi = t, sign = 1.0;
        if (hi < lo) { std::swap(lo, hi); sign = -1.0; }
        double acc = 0.0;
        if (lo < x[0]) { acc += y[0] * (std::min(hi, x[0]) - lo); lo = std::min(hi, x[0]); }
        if (hi > x[n - 1] && lo < hi) {
            double from = std::max(lo, x[n - 1]);
            acc += y[n - 1] * (hi - from);
            hi = x[n - 1];
        }
        for (size_t i = 0; i + 1 < n && lo < hi; ++i) {
            double a = std::max(lo, x[i]), b = std::min(hi, x[i + 1]);
            if (a < b) acc += seg(i, (a - x[i]) / (x[i + 1] - x[i]), (b - x[i]) / (x[i + 1] - x[i]));
        }
        return sign * acc;
    }
};

} // namespace

CurvatureModel CurvatureModel::make(std::string name, std::function<double(double)> f,
                                    std::function<double(double)> fp,
                                    std::function<double(double)> fpp, double kappa_limit) {
    CurvatureModel m;
    m.name_ = std::move(name);
    m.f_ = std::move(f);
    m.fp_ = std::move(fp);
    m.fpp_ = std::move(fpp);
    m.kappa_limit_ = kappa_limit;
    return m;
}

CurvatureModel CurvatureModel::linear() {
    return make("linear",
                [](double r) { return r; },
                [](double) { return 1.0; },
                [](double) { return 0.0; },
                std::numeric_limits<double>::infinity());
}

CurvatureModel CurvatureModel::exponential() {
    return make("exponential",
                [](double r) { return std::expm1(r); },
                [](double r) { return std::exp(r); },
                [](double r) { return std::exp(r); },
                50.0);
}

CurvatureModel CurvatureModel::custom(std::string name, std::vector<double> r,
                                      std::vector<double> fprime) {
    if (r.size() != fprime.size())
        throw std::invalid_argument("custom model: r and f' tables differ in length");
    for (double v : fprime)
        if (!(v > 0.0)) throw std::invalid_argument("custom model: f' must be positive");
    auto p = std::make_shared<Pchip>(std::move(r), std::move(fprime));
    if (std::abs(p->eval(0.0).first - 1.0) > 1e-12)
        throw std::invalid_argument("custom model: f'(0) must equal 1");
    const double limit = std::max(std::abs(p->x.front()), std::abs(p->x.back()));
    return make(std::move(name),
                [p](double t) { return p->integral_from_zero(t); },
                [p](double t) { return p->eval(t).first; },
                [p](double t) { return p->eval(t).second; },
                limit);
}

CurvatureModel scaled_model(const CurvatureModel& model, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("scaled_model: sigma must be positive");
    auto base = std::make_shared<CurvatureModel>(model);
    return CurvatureModel::make(
        model.name() + "@sigma=" + std::to_string(sigma),
        [base, sigma](double r) { return sigma * base->f(r / sigma); },
        [base, sigma](double r) { return base->fprime(r / sigma); },
        [base, sigma](double r) { return base->fsecond(r / sigma) / sigma; },
        base->kappa_limit() * sigma);
}

CurvatureModel model_by_name(const std::string& name) {
    if (name == "linear") return CurvatureModel::linear();
    if (name == "exponential") return CurvatureModel::exponential();
    throw std::invalid_argument("unknown model name: " + name);
}

} // namespace sdflow
