#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "parallel.hpp"

namespace aclandau {

using cplx = std::complex<double>;

/// Square complex matrix in compressed-row storage. Rows are appended in
/// order with push_entry / finish_row; column indices within a row are
/// kept sorted.
class CsrMatrix {
public:
    CsrMatrix() = default;
    explicit CsrMatrix(std::size_t dimension) : dim_(dimension) { row_ptr_.reserve(dimension + 1); }

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t nonzeros() const noexcept { return values_.size(); }

    void push_entry(std::size_t col, cplx v) {
        cols_.push_back(col);
        values_.push_back(v);
    }

    void finish_row() {
        const std::size_t begin = row_ptr_.back();
        // insertion sort: rows hold at most a handful of entries
        for (std::size_t a = begin + 1; a < cols_.size(); ++a) {
            for (std::size_t b = a; b > begin && cols_[b - 1] > cols_[b]; --b) {
                std::swap(cols_[b - 1], cols_[b]);
                std::swap(values_[b - 1], values_[b]);
            }
        }
        row_ptr_.push_back(cols_.size());
    }

    std::span<const std::size_t> row_cols(std::size_t r) const {
        return {cols_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
    }
    std::span<const cplx> row_values(std::size_t r) const {
        return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
    }

    cplx at(std::size_t r, std::size_t c) const {
        const auto cs = row_cols(r);
        const auto it = std::lower_bound(cs.begin(), cs.end(), c);
        if (it == cs.end() || *it != c) return {0.0, 0.0};
        return row_values(r)[static_cast<std::size_t>(it - cs.begin())];
    }

    std::size_t max_row_nonzeros() const {
        std::size_t m = 0;
        for (std::size_t r = 0; r < dim_; ++r) m = std::max(m, row_ptr_[r + 1] - row_ptr_[r]);
        return m;
    }

    /// y = A x
    void apply(std::span<const cplx> x, std::span<cplx> y) const {
        parallel_for(dim_, [&](std::size_t b, std::size_t e) {
            for (std::size_t r = b; r < e; ++r) {
                cplx s{0.0, 0.0};
                for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += values_[k] * x[cols_[k]];
                y[r] = s;
            }
        });
    }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const {
        Eigen::VectorXcd y(static_cast<Eigen::Index>(dim_));
        apply(std::span<const cplx>(x.data(), dim_), std::span<cplx>(y.data(), dim_));
        return y;
    }

    /// Y = A X, column by column.
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& X) const {
        Eigen::MatrixXcd Y(X.rows(), X.cols());
        for (Eigen::Index c = 0; c < X.cols(); ++c) {
            apply(std::span<const cplx>(X.col(c).data(), dim_), std::span<cplx>(Y.col(c).data(), dim_));
        }
        return Y;
    }

    /// max |A_rc - conj(A_cr)| over stored entries.
    double max_hermitian_defect() const {
        double d = 0.0;
        for (std::size_t r = 0; r < dim_; ++r) {
            const auto cs = row_cols(r);
            const auto vs = row_values(r);
            for (std::size_t k = 0; k < cs.size(); ++k) d = std::max(d, std::abs(vs[k] - std::conj(at(cs[k], r))));
        }
        return d;
    }

    /// Gershgorin bounds on the spectrum of a Hermitian matrix.
    double gershgorin_upper() const { return gershgorin(+1.0); }
    double gershgorin_lower() const { return gershgorin(-1.0); }

    Eigen::MatrixXcd to_dense() const {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
        for (std::size_t r = 0; r < dim_; ++r) {
            const auto cs = row_cols(r);
            const auto vs = row_values(r);
            for (std::size_t k = 0; k < cs.size(); ++k)
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cs[k])) = vs[k];
        }
        return m;
    }

private:
    double gershgorin(double side) const {
        double bound = side > 0 ? -INFINITY : INFINITY;
        for (std::size_t r = 0; r < dim_; ++r) {
            double centre = 0.0, radius = 0.0;
            const auto cs = row_cols(r);
            const auto vs = row_values(r);
            for (std::size_t k = 0; k < cs.size(); ++k) {
                if (cs[k] == r) centre = vs[k].real();
                else radius += std::abs(vs[k]);
            }
            bound = side > 0 ? std::max(bound, centre + radius) : std::min(bound, centre - radius);
        }
        return bound;
    }

    std::size_t dim_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> cols_;
    std::vector<cplx> values_;
};

}  // namespace aclandau
