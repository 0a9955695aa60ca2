#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sdflow {

enum class GridKind { periodic, truncated };

/// Uniform 1-D grid on [-L, L) with nodes x_j = -L + j*dx, dx = 2L/N.
/// Periodic grids identify x = -L with x = L; truncated grids stand in for
/// a finite window of the line and rely on one-sided stencil closures.
struct GridSpec {
    GridKind kind = GridKind::periodic;
    double half_length = 0.0;
    int n = 0;

    double dx() const { return 2.0 * half_length / n; }
    double node(int j) const { return -half_length + j * dx(); }
    std::vector<double> nodes() const;

    bool operator==(const GridSpec&) const = default;
};

/// Throws std::invalid_argument for L <= 0 or N < 8.
GridSpec build_grid(GridKind kind, double half_length, int n);

/// A sampled function on a grid at a fixed time. Immutable after
/// construction; construction rejects non-finite values.
class Field {
public:
    Field(GridSpec grid, std::vector<double> values, double time, std::string label = "");

    const GridSpec& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double time() const { return time_; }
    const std::string& label() const { return label_; }

    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int j) const { return values_[j]; }

    double sup_norm() const;
    double mean() const;

    /// Same grid/label, new values and optionally a new time stamp.
    Field with_values(std::vector<double> values, double time) const;
    Field relabeled(std::string label) const;

    /// Linear interpolation at x. Periodic grids wrap; truncated grids
    /// extend by their boundary values.
    double interpolate(double x) const;

    static Field sample(const GridSpec& grid, const std::function<double(double)>& f,
                        double time, std::string label = "");

private:
    GridSpec grid_;
    std::vector<double> values_;
    double time_;
    std::string label_;
};

/// True if every entry is finite.
bool all_finite(std::span<const double> values);

} // namespace sdflow
