#pragma once

// Five-point finite-difference discretization of
//   H = 1/2 (-i grad - c a)^2 + s
// on a Dirichlet box. The coupling term uses the symmetrized central form
// 1/2 (a . grad_h + grad_h . a), so H is Hermitian by construction.

#include <cmath>
#include <complex>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"
#include "fields.hpp"
#include "grid.hpp"
#include "sparse.hpp"

namespace aclandau {

enum class Axis { X, Y };

/// Hermitian five-point operator on a grid.
class DiscreteOperator {
public:
    static constexpr double hermiticity_tolerance = 1e-13;
    static constexpr std::size_t max_row_entries = 5;

    DiscreteOperator(CsrMatrix matrix, Grid2D grid, std::string label)
        : matrix_(std::move(matrix)), grid_(grid), label_(std::move(label)) {
        if (matrix_.dimension() != grid_.size()) throw Error("operator dimension does not match grid");
        const double defect = matrix_.max_hermitian_defect();
        if (defect > hermiticity_tolerance) {
            throw Error(label_ + ": operator is not Hermitian (defect " + std::to_string(defect) + ")");
        }
        if (matrix_.max_row_nonzeros() > max_row_entries) throw Error(label_ + ": stencil wider than five points");
    }

    std::size_t dimension() const noexcept { return matrix_.dimension(); }
    const CsrMatrix& matrix() const noexcept { return matrix_; }
    const Grid2D& grid() const noexcept { return grid_; }
    const std::string& label() const noexcept { return label_; }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const { return matrix_.apply(x); }
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& x) const { return matrix_.apply(x); }

    /// Debug dump: "N n L h label" header, then "row col re im" per nonzero.
    void dump(std::ostream& os) const {
        const auto old_precision = os.precision();
        os << std::setprecision(17);
        os << dimension() << ' ' << grid_.points_per_axis() << ' ' << grid_.half_extent() << ' '
           << grid_.spacing() << ' ' << label_ << '\n';
        for (std::size_t r = 0; r < dimension(); ++r) {
            const auto cs = matrix_.row_cols(r);
            const auto vs = matrix_.row_values(r);
            for (std::size_t k = 0; k < cs.size(); ++k)
                os << r << ' ' << cs[k] << ' ' << vs[k].real() << ' ' << vs[k].imag() << '\n';
        }
        os.precision(old_precision);
    }

private:
    CsrMatrix matrix_;
    Grid2D grid_;
    std::string label_;
};

namespace detail {

inline std::string axis_name(Axis a) { return a == Axis::X ? "x" : "y"; }

}  // namespace detail

/// Pi_axis = -i D_axis - coupling * a_axis with the central difference D.
inline DiscreteOperator build_kinematic_momentum(const FieldConfig& cfg, const Grid2D& g, Axis axis) {
    const int n = g.points_per_axis();
    const double h = g.spacing();
    const cplx hop(0.0, -1.0 / (2.0 * h));  // entry (p, p + e)
    const Polynomial2& a = axis == Axis::X ? cfg.ax : cfg.ay;

    CsrMatrix m(g.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int di = axis == Axis::X ? 1 : 0;
            const int dj = axis == Axis::Y ? 1 : 0;
            const double x = g.coordinate(i), y = g.coordinate(j);
            const double diag = -cfg.coupling * a(x, y);
            if (i - di >= 0 && j - dj >= 0) m.push_entry(g.index(i - di, j - dj), -hop);
            if (diag != 0.0) m.push_entry(g.index(i, j), diag);
            if (i + di < n && j + dj < n) m.push_entry(g.index(i + di, j + dj), hop);
            m.finish_row();
        }
    }
    return DiscreteOperator(std::move(m), g, "Pi_" + detail::axis_name(axis) + "[" + cfg.name() + "]");
}

/// H = 1/2 [ -lap_h + i c (a . D + D . a) + c^2 |a|^2 ] + s.
inline DiscreteOperator build_hamiltonian(const FieldConfig& cfg, const Grid2D& g) {
    const int n = g.points_per_axis();
    const double h = g.spacing();
    const double c = cfg.coupling;
    const double kinetic = 1.0 / (h * h);

    // grid samples of the potential and scalar term
    std::vector<double> ax(g.size()), ay(g.size()), s(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double x = g.x_at(k), y = g.y_at(k);
        ax[k] = cfg.ax(x, y);
        ay[k] = cfg.ay(x, y);
        s[k] = cfg.scalar(x, y);
    }

    // forward-neighbour entry along one axis: 1/2 [ -1/h^2 + i c (a_p + a_q) / (2h) ]
    auto forward = [&](double a_p, double a_q) {
        return 0.5 * cplx(-kinetic, c * (a_p + a_q) / (2.0 * h));
    };

    CsrMatrix m(g.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::size_t p = g.index(i, j);
            if (i > 0) {
                const std::size_t q = g.index(i - 1, j);
                m.push_entry(q, std::conj(forward(ax[q], ax[p])));
            }
            if (j > 0) {
                const std::size_t q = g.index(i, j - 1);
                m.push_entry(q, std::conj(forward(ay[q], ay[p])));
            }
            m.push_entry(p, 0.5 * (4.0 * kinetic + c * c * (ax[p] * ax[p] + ay[p] * ay[p])) + s[p]);
            if (j + 1 < n) {
                const std::size_t q = g.index(i, j + 1);
                m.push_entry(q, forward(ay[p], ay[q]));
            }
            if (i + 1 < n) {
                const std::size_t q = g.index(i + 1, j);
                m.push_entry(q, forward(ax[p], ax[q]));
            }
            m.finish_row();
        }
    }
    return DiscreteOperator(std::move(m), g, "H[" + cfg.name() + "]");
}

/// Samples f on the grid.
inline Eigen::VectorXcd sample(const Grid2D& g, const std::function<cplx(double, double)>& f) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(g.size()));
    for (std::size_t k = 0; k < g.size(); ++k) v[static_cast<Eigen::Index>(k)] = f(g.x_at(k), g.y_at(k));
    return v;
}

/// Multiplies psi pointwise by exp(i * coupling * chi): the unitary that
/// carries the discretized base Hamiltonian to its gauge-transformed image
/// in the continuum limit.
inline Eigen::VectorXcd apply_gauge_phase(const Grid2D& g, const GaugeFunction& chi, double coupling,
                                          const Eigen::VectorXcd& psi, double sign = 1.0) {
    Eigen::VectorXcd out(psi.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto idx = static_cast<Eigen::Index>(k);
        out[idx] = std::polar(1.0, sign * coupling * chi(g.x_at(k), g.y_at(k))) * psi[idx];
    }
    return out;
}

/// Band of grid points within `width` spacings of the boundary.
inline bool in_boundary_band(const Grid2D& g, std::size_t k, int width) {
    const int n = g.points_per_axis();
    const int i = g.row(k), j = g.col(k);
    return i < width || j < width || i >= n - width || j >= n - width;
}

/// Relative residual || [Pi_x, Pi_y] psi - i c b_z psi ||_inf / ||psi||_inf.
///
/// psi must be negligible (<= 1e-8 of its peak) within five spacings of the
/// boundary; otherwise BoundaryContamination is thrown.
inline double commutator_residual(const FieldConfig& cfg, const Grid2D& g, const Eigen::VectorXcd& psi) {
    constexpr int margin = 5;
    constexpr double support_threshold = 1e-8;
    if (static_cast<std::size_t>(psi.size()) != g.size()) throw ValidationError("test vector does not match grid");

    const double peak = psi.cwiseAbs().maxCoeff();
    if (!(peak > 0.0)) throw ValidationError("test vector is zero");
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (in_boundary_band(g, k, margin) && std::abs(psi[static_cast<Eigen::Index>(k)]) > support_threshold * peak) {
            throw BoundaryContamination("test function is not supported away from the boundary");
        }
    }

    const auto px = build_kinematic_momentum(cfg, g, Axis::X);
    const auto py = build_kinematic_momentum(cfg, g, Axis::Y);
    const Eigen::VectorXcd comm = px.apply(py.apply(psi)) - py.apply(px.apply(psi));
    const Polynomial2 bz = field_strength_polynomial(cfg);

    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto idx = static_cast<Eigen::Index>(k);
        const cplx expected = cplx(0.0, cfg.coupling * bz(g.x_at(k), g.y_at(k))) * psi[idx];
        worst = std::max(worst, std::abs(comm[idx] - expected));
    }
    return worst / peak;
}

}  // namespace aclandau
