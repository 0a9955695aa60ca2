#pragma once

#include "sdflow/grid.hpp"

namespace sdflow {

enum class DerivScheme { spectral, central };

/// Discrete d^order/dx^order, order in 1..4.
///
/// spectral: periodic grids only; exact on resolved trigonometric
/// polynomials (Nyquist zeroed for odd orders).
/// central: 5-point stencils for orders 1-2, 7-point for orders 3-4,
/// one-sided closures of the same width near truncated boundaries,
/// periodic wrap otherwise.
Field differentiate(const Field& field, int order, DerivScheme scheme);

/// Scheme a grid supports natively.
inline DerivScheme natural_scheme(const GridSpec& g) {
    return g.kind == GridKind::periodic ? DerivScheme::spectral : DerivScheme::central;
}

/// Zero-mean periodic antiderivative (spectral); the k=0 mode of the input
/// is ignored and must be handled by the caller.
Field antiderivative_periodic(const Field& field);

/// Finite-difference weights for d^m/dx^m at point x0 from the given nodes
/// (Fornberg recursion).
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int m);

} // namespace sdflow
