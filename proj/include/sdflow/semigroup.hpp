#pragma once

#include "sdflow/grid.hpp"
#include "sdflow/kernel.hpp"

#include <vector>

namespace sdflow {

/// e^{-t d^4/dx^4} applied to a field; t >= 0.
///
/// Periodic grids: Fourier multiplier exp(-t k^4) on each resolved mode.
/// Truncated grids: discrete convolution with the kernel table, the field
/// extended beyond the grid by its boundary values (constant far field).
Field apply_semigroup(const Field& field, double t,
                      const KernelTable& table = default_kernel_table());

/// int_0^t d_x^deriv e^{-(t-s) d^4} g(s) ds over the forcing's own sample
/// times (composite trapezoid), deriv in 0..2. Samples must be in increasing
/// time order spanning [0, t]. On periodic grids the final subinterval is
/// propagated analytically with the forcing frozen at its left endpoint,
/// which removes the integrable endpoint singularity for deriv = 2.
Field duhamel(const std::vector<Field>& forcing, double t, int deriv,
              const KernelTable& table = default_kernel_table());

} // namespace sdflow
