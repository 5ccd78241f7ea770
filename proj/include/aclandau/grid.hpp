#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "errors.hpp"

namespace aclandau {

/// Uniform n x n grid on [-L, L]^2. Row-major: index(i, j) = i * n + j with
/// i running along x and j along y. n is odd so the origin is a grid point.
class Grid2D {
public:
    Grid2D(double half_extent, int points_per_axis) : half_extent_(half_extent), n_(points_per_axis) {
        if (!(half_extent > 0.0) || !std::isfinite(half_extent)) {
            throw ValidationError("grid half-extent must be positive");
        }
        if (points_per_axis < 3 || points_per_axis % 2 == 0) {
            throw ValidationError("grid points per axis must be odd and >= 3, got " +
                                  std::to_string(points_per_axis));
        }
    }

    /// Grid with the requested spacing; 2L / h must be an even integer.
    static Grid2D from_spacing(double half_extent, double spacing) {
        if (!(spacing > 0.0)) throw ValidationError("grid spacing must be positive");
        const double intervals = 2.0 * half_extent / spacing;
        const long rounded = std::lround(intervals);
        if (std::abs(intervals - static_cast<double>(rounded)) > 1e-9 * intervals || rounded % 2 != 0) {
            throw ValidationError("2L/h must be an even integer");
        }
        return Grid2D(half_extent, static_cast<int>(rounded) + 1);
    }

    double half_extent() const noexcept { return half_extent_; }
    int points_per_axis() const noexcept { return n_; }
    double spacing() const noexcept { return 2.0 * half_extent_ / (n_ - 1); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * n_; }

    double coordinate(int i) const noexcept { return -half_extent_ + i * spacing(); }
    std::size_t index(int i, int j) const noexcept { return static_cast<std::size_t>(i) * n_ + j; }
    int row(std::size_t idx) const noexcept { return static_cast<int>(idx / n_); }
    int col(std::size_t idx) const noexcept { return static_cast<int>(idx % n_); }
    double x_at(std::size_t idx) const noexcept { return coordinate(row(idx)); }
    double y_at(std::size_t idx) const noexcept { return coordinate(col(idx)); }

    /// Side of the Dirichlet box: the wall sits one spacing outside the
    /// outermost grid points.
    double box_side() const noexcept { return (n_ + 1) * spacing(); }

    friend bool operator==(const Grid2D&, const Grid2D&) = default;

private:
    double half_extent_;
    int n_;
};

}  // namespace aclandau
