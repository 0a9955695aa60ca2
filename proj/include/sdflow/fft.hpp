#pragma once

#include <complex>
#include <span>
#include <vector>

namespace sdflow::fft {

/// Real-to-half-complex transform (size n/2+1), unnormalized.
std::vector<std::complex<double>> forward(std::span<const double> in);

/// Half-complex-to-real inverse; divides by n.
std::vector<double> inverse(std::span<const std::complex<double>> in, int n);

} // namespace sdflow::fft
