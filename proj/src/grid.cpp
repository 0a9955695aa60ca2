#include "sdflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sdflow {

std::vector<double> GridSpec::nodes() const {
    std::vector<double> xs(n);
    for (int j = 0; j < n; ++j) xs[j] = node(j);
    return xs;
}

GridSpec build_grid(GridKind kind, double half_length, int n) {
    if (!(half_length > 0.0))
        throw std::invalid_argument("build_grid: half_length must be positive");
    if (n < 8)
        throw std::invalid_argument("build_grid: N must be at least 8");
    return GridSpec{kind, half_length, n};
}

bool all_finite(std::span<const double> values) {
    return std::all_of(values.begin(), values.end(),
                       [](double v) { return std::isfinite(v); });
}

Field::Field(GridSpec grid, std::vector<double> values, double time, std::string label)
    : grid_(grid), values_(std::move(values)), time_(time), label_(std::move(label)) {
    if (static_cast<int>(values_.size()) != grid_.n)
        throw std::invalid_argument("Field: values length does not match grid");
    if (!all_finite(values_))
        throw std::invalid_argument("Field: non-finite value");
    if (!(time_ >= 0.0))
        throw std::invalid_argument("Field: negative time stamp");
}

double Field::sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double Field::mean() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0) / values_.size();
}

Field Field::with_values(std::vector<double> values, double time) const {
    return Field(grid_, std::move(values), time, label_);
}

Field Field::relabeled(std::string label) const {
    return Field(grid_, values_, time_, std::move(label));
}

double Field::interpolate(double x) const {
    const double dx = grid_.dx();
    const double L = grid_.half_length;
    const int n = grid_.n;
    double s = (x + L) / dx;
    if (grid_.kind == GridKind::periodic) {
        s = std::fmod(s, static_cast<double>(n));
        if (s < 0) s += n;
        int j = static_cast<int>(std::floor(s));
        double w = s - j;
        int j1 = (j + 1) % n;
        return (1.0 - w) * values_[j] + w * values_[j1];
    }
    if (s <= 0.0) return values_.front();
    if (s >= n - 1) return values_.back();
    int j = static_cast<int>(std::floor(s));
    double w = s - j;
    return (1.0 - w) * values_[j] + w * values_[j + 1];
}

Field Field::sample(const GridSpec& grid, const std::function<double(double)>& f,
                    double time, std::string label) {
    std::vector<double> vals(grid.n);
    for (int j = 0; j < grid.n; ++j) vals[j] = f(grid.node(j));
    return Field(grid, std::move(vals), time, std::move(label));
}

} // namespace sdflow
