#include "sdflow/flow_ops.hpp"

#include "sdflow/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace sdflow {
namespace {

void require_compatible(const Field& a, const Field& b, const char* who) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument(std::string(who) + ": grid mismatch");
    if (a.time() != b.time())
        throw std::invalid_argument(std::string(who) + ": time mismatch");
}

double guarded_fprime(const CurvatureModel& model, double kappa, double time) {
    if (std::abs(kappa) > model.kappa_limit())
        throw blowup_error(time, "curvature " + std::to_string(kappa) +
                                     " beyond model limit under " + model.name());
    return model.fprime(-kappa);
}

} // namespace

Field curvature(const Field& v, const Field& v_x) {
    require_compatible(v, v_x, "curvature");
    std::vector<double> out(v.size());
    for (int j = 0; j < v.size(); ++j) {
        const double d = 1.0 + v[j] * v[j];
        out[j] = v_x[j] / (d * std::sqrt(d));
    }
    return Field(v.grid(), std::move(out), v.time(), "kappa");
}

Field alpha(const Field& v, const Field& v_x, const CurvatureModel& model) {
    require_compatible(v, v_x, "alpha");
    std::vector<double> out(v.size());
    for (int j = 0; j < v.size(); ++j) {
        const double d = 1.0 + v[j] * v[j];
        const double kappa = v_x[j] / (d * std::sqrt(d));
        out[j] = 1.0 - guarded_fprime(model, kappa, v.time()) / (d * d);
    }
    return Field(v.grid(), std::move(out), v.time(), "alpha");
}

Field f_pert(const Field& v, const Field& v_x, const CurvatureModel& model) {
    require_compatible(v, v_x, "f_pert");
    std::vector<double> out(v.size());
    for (int j = 0; j < v.size(); ++j) {
        const double d = 1.0 + v[j] * v[j];
        const double kappa = v_x[j] / (d * std::sqrt(d));
        out[j] = 3.0 * v[j] * v_x[j] * v_x[j] / (d * d * d) *
                 guarded_fprime(model, kappa, v.time());
    }
    return Field(v.grid(), std::move(out), v.time(), "F");
}

double coeff_A(double q, double r, const CurvatureModel& model) {
    const double d = 1.0 + q * q;
    return model.fprime(-r / (d * std::sqrt(d))) / (d * d);
}

double coeff_B(double q, double r, double s, const CurvatureModel& model) {
    const double d = 1.0 + q * q;
    const double d3 = d * d * d;
    const double kappa = r / (d * std::sqrt(d));
    const double fp = model.fprime(-kappa);
    const double fpp = model.fsecond(-kappa);
    const double t1 = ((10.0 * q * r * s + 3.0 * r * r * r) / d3 -
                       18.0 * q * q * r * r * r / (d3 * d)) * fp;
    const double kx = s / (d * std::sqrt(d)) - 3.0 * q * r * r / (d * d * std::sqrt(d));
    const double t2 = kx * kx * fpp / std::sqrt(d);
    return t1 + t2;
}

Field rhs_u(const Field& u, const CurvatureModel& model) {
    return rhs_u(u, model, natural_scheme(u.grid()));
}

Field rhs_u(const Field& u, const CurvatureModel& model, DerivScheme scheme) {
    const Field ux = differentiate(u, 1, scheme);
    const Field uxx = differentiate(u, 2, scheme);
    std::vector<double> fk(u.size());
    for (int j = 0; j < u.size(); ++j) {
        const double d = 1.0 + ux[j] * ux[j];
        const double kappa = uxx[j] / (d * std::sqrt(d));
        if (std::abs(kappa) > model.kappa_limit())
            throw blowup_error(u.time(), "curvature beyond model limit in rhs_u");
        fk[j] = model.f(-kappa);
    }
    Field flux_core = differentiate(Field(u.grid(), std::move(fk), u.time()), 1, scheme);
    std::vector<double> flux(u.size());
    for (int j = 0; j < u.size(); ++j)
        flux[j] = flux_core[j] / std::sqrt(1.0 + ux[j] * ux[j]);
    Field out = differentiate(Field(u.grid(), std::move(flux), u.time()), 1, scheme);
    return out.relabeled("u_t");
}

Field rhs_u_expanded(const Field& u, const CurvatureModel& model) {
    return rhs_u_expanded(u, model, natural_scheme(u.grid()));
}

Field rhs_u_expanded(const Field& u, const CurvatureModel& model, DerivScheme scheme) {
    const Field ux = differentiate(u, 1, scheme);
    const Field uxx = differentiate(u, 2, scheme);
    const Field uxxx = differentiate(u, 3, scheme);
    const Field uxxxx = differentiate(u, 4, scheme);
    std::vector<double> out(u.size());
    for (int j = 0; j < u.size(); ++j) {
        const double d = 1.0 + ux[j] * ux[j];
        const double kappa = uxx[j] / (d * std::sqrt(d));
        if (std::abs(kappa) > model.kappa_limit())
            throw blowup_error(u.time(), "curvature beyond model limit in rhs_u_expanded");
        out[j] = -coeff_A(ux[j], uxx[j], model) * uxxxx[j] +
                 coeff_B(ux[j], uxx[j], uxxx[j], model);
    }
    return Field(u.grid(), std::move(out), u.time(), "u_t");
}

Field time_derivative_from_v(const Field& v, const CurvatureModel& model, DerivScheme scheme) {
    const Field vx = differentiate(v, 1, scheme);
    std::vector<double> fk(v.size());
    for (int j = 0; j < v.size(); ++j) {
        const double d = 1.0 + v[j] * v[j];
        const double kappa = vx[j] / (d * std::sqrt(d));
        if (std::abs(kappa) > model.kappa_limit())
            throw blowup_error(v.time(), "curvature beyond model limit");
        fk[j] = model.f(-kappa);
    }
    Field flux_core = differentiate(Field(v.grid(), std::move(fk), v.time()), 1, scheme);
    std::vector<double> flux(v.size());
    for (int j = 0; j < v.size(); ++j)
        flux[j] = flux_core[j] / std::sqrt(1.0 + v[j] * v[j]);
    Field out = differentiate(Field(v.grid(), std::move(flux), v.time()), 1, scheme);
    return out.relabeled("u_t");
}

SmallnessReport check_smallness(const Field& v, const Field& v_x, double epsilon0) {
    SmallnessReport rep;
    rep.sup_v = v.sup_norm();
    rep.sup_vx = v_x.sup_norm();
    rep.sup_alpha = 0.0;
    rep.epsilon0 = epsilon0;
    rep.ok = std::max(rep.sup_v, rep.sup_vx) < epsilon0;
    return rep;
}

SmallnessReport check_smallness(const Field& v, const Field& v_x,
                                const CurvatureModel& model, double epsilon0) {
    SmallnessReport rep = check_smallness(v, v_x, epsilon0);
    rep.sup_alpha = alpha(v, v_x, model).sup_norm();
    return rep;
}

} // namespace sdflow
