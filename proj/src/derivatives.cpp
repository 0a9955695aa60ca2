#include "sdflow/derivatives.hpp"

#include "sdflow/fft.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace sdflow {

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int m) {
    // Fornberg (1988), weights for derivative order m at x0.
    const int nn = static_cast<int>(nodes.size());
    std::vector<std::vector<double>> c(nn, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < nn; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(nn);
    for (int i = 0; i < nn; ++i) w[i] = c[i][m];
    return w;
}

namespace {

Field differentiate_spectral(const Field& field, int order) {
    const auto& g = field.grid();
    auto spec = fft::forward(field.values());
    const int n = g.n;
    const double k0 = M_PI / g.half_length;
    const std::complex<double> iu(0.0, 1.0);
    for (int j = 0; j < static_cast<int>(spec.size()); ++j) {
        double k = k0 * j;
        std::complex<double> mult = std::pow(iu * k, order);
        spec[j] *= mult;
    }
    if (order % 2 == 1) spec.back() = 0.0; // Nyquist has no signed direction
    return field.with_values(fft::inverse(spec, n), field.time());
}

Field differentiate_central(const Field& field, int order) {
    const auto& g = field.grid();
    const int n = g.n;
    const double dx = g.dx();
    const int half = order <= 2 ? 2 : 3; // 5-point / 7-point
    const int width = 2 * half + 1;

    std::vector<double> offsets(width);
    for (int i = 0; i < width; ++i) offsets[i] = (i - half) * dx;
    const auto wc = fd_weights(0.0, offsets, order);

    std::vector<double> out(n, 0.0);
    const auto v = field.values();

    if (g.kind == GridKind::periodic) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int i = 0; i < width; ++i) {
                int idx = (j + i - half) % n;
                if (idx < 0) idx += n;
                acc += wc[i] * v[idx];
            }
            out[j] = acc;
        }
        return field.with_values(std::move(out), field.time());
    }

    // Truncated grid: same-width one-sided stencils near the ends.
    for (int j = 0; j < n; ++j) {
        int lo = j - half;
        if (lo < 0) lo = 0;
        if (lo + width > n) lo = n - width;
        if (j >= half && j + half < n) {
            double acc = 0.0;
            for (int i = 0; i < width; ++i) acc += wc[i] * v[j - half + i];
            out[j] = acc;
        } else {
            std::vector<double> xs(width);
            for (int i = 0; i < width; ++i) xs[i] = (lo + i) * dx;
            const auto w1 = fd_weights(j * dx, xs, order);
            double acc = 0.0;
            for (int i = 0; i < width; ++i) acc += w1[i] * v[lo + i];
            out[j] = acc;
        }
    }
    return field.with_values(std::move(out), field.time());
}

} // namespace

Field differentiate(const Field& field, int order, DerivScheme scheme) {
    if (order < 1 || order > 4)
        throw std::invalid_argument("differentiate: order must be in 1..4");
    if (scheme == DerivScheme::spectral) {
        if (field.grid().kind != GridKind::periodic)
            throw std::invalid_argument("differentiate: spectral scheme requires a periodic grid");
        return differentiate_spectral(field, order);
    }
    return differentiate_central(field, order);
}

Field antiderivative_periodic(const Field& field) {
    if (field.grid().kind != GridKind::periodic)
        throw std::invalid_argument("antiderivative_periodic: periodic grid required");
    auto spec = fft::forward(field.values());
    const double k0 = M_PI / field.grid().half_length;
    const std::complex<double> iu(0.0, 1.0);
    spec[0] = 0.0;
    for (int j = 1; j < static_cast<int>(spec.size()); ++j)
        spec[j] /= iu * (k0 * j);
    return field.with_values(fft::inverse(spec, field.grid().n), field.time());
}

} // namespace sdflow
