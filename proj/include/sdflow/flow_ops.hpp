#pragma once

#include "sdflow/derivatives.hpp"
#include "sdflow/grid.hpp"
#include "sdflow/model.hpp"

namespace sdflow {

/// kappa = v_x / (1+v^2)^{3/2}, the slope-variable curvature. The geometric
/// curvature of the graph is its negative; all formulas here follow the
/// slope-variable convention.
Field curvature(const Field& v, const Field& v_x);

/// alpha = 1 - (1+v^2)^{-2} f'(-kappa); the fourth-order perturbation
/// coefficient. Throws blowup_error when |kappa| exceeds the model limit.
Field alpha(const Field& v, const Field& v_x, const CurvatureModel& model);

/// F = 3 v v_x^2 (1+v^2)^{-3} f'(-kappa) = v kappa^2 f'(-kappa).
Field f_pert(const Field& v, const Field& v_x, const CurvatureModel& model);

/// Frozen-coefficient expansion: rhs = -A(u_x, u_xx) u_xxxx + B(u_x, u_xx, u_xxx).
double coeff_A(double q, double r, const CurvatureModel& model);
double coeff_B(double q, double r, double s, const CurvatureModel& model);

/// Divergence-form right side of the flow,
/// u_t = ( (1+u_x^2)^{-1/2} ( f(-u_xx (1+u_x^2)^{-3/2}) )_x )_x,
/// via nested discrete derivatives.
Field rhs_u(const Field& u, const CurvatureModel& model);
Field rhs_u(const Field& u, const CurvatureModel& model, DerivScheme scheme);

/// Same right side via coeff_A / coeff_B and direct derivatives of u.
Field rhs_u_expanded(const Field& u, const CurvatureModel& model);
Field rhs_u_expanded(const Field& u, const CurvatureModel& model, DerivScheme scheme);

/// u_t written in v = u_x variables: the full right side depends only on
/// v and its first three derivatives.
Field time_derivative_from_v(const Field& v, const CurvatureModel& model, DerivScheme scheme);

struct SmallnessReport {
    double sup_v = 0.0;
    double sup_vx = 0.0;
    double sup_alpha = 0.0;
    double epsilon0 = 0.0;
    bool ok = false;
};

/// ok iff max(sup|v|, sup|v_x|) < epsilon0. Informational; never aborts.
SmallnessReport check_smallness(const Field& v, const Field& v_x, double epsilon0);
SmallnessReport check_smallness(const Field& v, const Field& v_x,
                                const CurvatureModel& model, double epsilon0);

} // namespace sdflow
