#pragma once

// Lowest eigenpairs of a Hermitian sparse operator.
//
// The dense path diagonalizes the full matrix. The Lanczos path runs a
// block thick-restart Lanczos iteration with full reorthogonalization on a
// Chebyshev polynomial p(H) that maps the wanted low end of the spectrum to
// the largest values of p; a final Rayleigh-Ritz step with H itself yields
// the eigenpairs. The blocks resolve exactly degenerate eigenvalues up to
// the block size.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "discrete.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "sparse.hpp"

namespace aclandau {

enum class SolverMethod { Auto, Dense, Lanczos };

inline std::string to_string(SolverMethod m) {
    switch (m) {
        case SolverMethod::Auto: return "auto";
        case SolverMethod::Dense: return "dense";
        case SolverMethod::Lanczos: return "lanczos";
    }
    return "unknown";
}

struct SolverOptions {
    double tol = 1e-8;               ///< bound on ||H v - lambda v|| for every returned pair
    SolverMethod method = SolverMethod::Auto;
    bool want_vectors = true;
    int buffer = 8;                  ///< extra pairs computed and discarded
    int block_size = 4;
    int filter_degree = 30;
    std::uint64_t seed = 20020731;
    int max_iterations = 0;          ///< block steps on p(H); 0 means 50 * (k + buffer)
    std::size_t dense_limit = 1200;  ///< auto picks dense for N <= dense_limit
};

struct Spectrum {
    std::vector<double> values;      ///< ascending
    Eigen::MatrixXcd vectors;        ///< unit-norm columns; empty when not requested
    std::vector<double> residuals;   ///< ||H v - lambda v|| (or dense estimate without vectors)
    std::string method;
    int iterations = 0;
    double tolerance = 0.0;
    std::optional<Grid2D> grid;

    std::size_t size() const noexcept { return values.size(); }
    bool has_vectors() const noexcept { return vectors.cols() == static_cast<Eigen::Index>(values.size()) && !values.empty(); }
};

namespace detail {

using BlockOp = std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>;

inline Eigen::MatrixXcd random_block(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = cplx(normal(rng), normal(rng));
    return m;
}

/// Orthonormalizes the columns of W against basis.leftCols(filled) (assumed
/// already projected out once) and against each other. Returns R with
/// W_in = Q R modulo the basis components; rank-deficient columns are
/// replaced by fresh random directions with a zero diagonal in R.
inline Eigen::MatrixXcd orthonormalize_block(Eigen::MatrixXcd& W, const Eigen::MatrixXcd& basis, Eigen::Index filled,
                                             std::mt19937_64& rng) {
    const Eigen::Index b = W.cols();
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(b, b);
    auto prior = basis.leftCols(filled);
    for (Eigen::Index c = 0; c < b; ++c) {
        const double before = W.col(c).norm();
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index p = 0; p < c; ++p) {
                const cplx r = W.col(p).dot(W.col(c));
                R(p, c) += r;
                W.col(c) -= r * W.col(p);
            }
        }
        double norm = W.col(c).norm();
        if (norm <= 1e-10 * std::max(before, 1e-300) || norm == 0.0) {
            // invariant subspace reached: continue with a random direction
            Eigen::VectorXcd v = random_block(W.rows(), 1, rng).col(0);
            for (int pass = 0; pass < 2; ++pass) {
                if (filled > 0) v -= prior * (prior.adjoint() * v);
                for (Eigen::Index p = 0; p < c; ++p) v -= W.col(p).dot(v) * W.col(p);
            }
            W.col(c) = v.normalized();
            R(c, c) = 0.0;
        } else {
            W.col(c) /= norm;
            R(c, c) = norm;
        }
    }
    return R;
}

struct RitzState {
    Eigen::VectorXd theta;   ///< descending
    Eigen::MatrixXcd S;      ///< coefficient vectors, same order
    Eigen::VectorXd estimate;
};

/// Block Lanczos with full reorthogonalization and thick restart for the
/// largest eigenvalues of a Hermitian operator given as a block product.
class BlockLanczos {
public:
    BlockLanczos(BlockOp op, Eigen::Index dim, Eigen::Index block, Eigen::Index max_basis, std::uint64_t seed)
        : op_(std::move(op)), n_(dim), b_(block), m_(max_basis), rng_(seed) {
        V_ = Eigen::MatrixXcd::Zero(n_, m_ + b_);
        T_ = Eigen::MatrixXcd::Zero(m_ + b_, m_ + b_);
        Eigen::MatrixXcd start = random_block(n_, b_, rng_);
        orthonormalize_block(start, V_, 0, rng_);
        V_.leftCols(b_) = start;
        done_ = 0;
        filled_ = b_;
    }

    /// Expands the basis to m columns. Returns the number of block steps taken.
    int expand() {
        int steps = 0;
        while (done_ + b_ <= m_) {
            Eigen::MatrixXcd W = op_(V_.middleCols(done_, b_));
            ++steps;
            auto basis = V_.leftCols(filled_);
            Eigen::MatrixXcd H = basis.adjoint() * W;
            W.noalias() -= basis * H;
            Eigen::MatrixXcd H2 = basis.adjoint() * W;
            W.noalias() -= basis * H2;
            H += H2;
            T_.block(0, done_, filled_, b_) = H;
            T_.block(done_, 0, b_, filled_) = H.adjoint();
            const Eigen::MatrixXcd R = orthonormalize_block(W, V_, filled_, rng_);
            V_.middleCols(filled_, b_) = W;
            T_.block(filled_, done_, b_, b_) = R;
            T_.block(done_, filled_, b_, b_) = R.adjoint();
            done_ += b_;
            filled_ += b_;
        }
        return steps;
    }

    RitzState ritz() const {
        const Eigen::MatrixXcd Tm = 0.5 * (T_.topLeftCorner(done_, done_) + T_.topLeftCorner(done_, done_).adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Tm);
        RitzState r;
        r.theta = es.eigenvalues().reverse();
        r.S = es.eigenvectors().rowwise().reverse();
        const Eigen::MatrixXcd coupling = T_.block(done_, 0, b_, done_) * r.S;
        r.estimate = coupling.colwise().norm().transpose();
        return r;
    }

    /// Keeps the `keep` leading Ritz vectors plus the residual block.
    void restart(const RitzState& r, Eigen::Index keep) {
        const Eigen::MatrixXcd coupling = T_.block(done_, 0, b_, done_) * r.S.leftCols(keep);
        const Eigen::MatrixXcd kept = V_.leftCols(done_) * r.S.leftCols(keep);
        const Eigen::MatrixXcd residual = V_.middleCols(done_, b_);
        V_.leftCols(keep) = kept;
        V_.middleCols(keep, b_) = residual;
        T_.setZero();
        for (Eigen::Index i = 0; i < keep; ++i) T_(i, i) = r.theta[i];
        T_.block(keep, 0, b_, keep) = coupling;
        T_.block(0, keep, keep, b_) = coupling.adjoint();
        done_ = keep;
        filled_ = keep + b_;
    }

    Eigen::MatrixXcd vectors(const RitzState& r, Eigen::Index count) const {
        return V_.leftCols(done_) * r.S.leftCols(count);
    }

    Eigen::Index block() const noexcept { return b_; }
    Eigen::Index basis_size() const noexcept { return m_; }

private:
    BlockOp op_;
    Eigen::Index n_, b_, m_;
    std::mt19937_64 rng_;
    Eigen::MatrixXcd V_, T_;
    Eigen::Index done_ = 0, filled_ = 0;
};

/// Scaled Chebyshev filter: p(H) X with p(x) = T_d(t(x)) / T_d(t(low)),
/// t mapping [cut, top] onto [-1, 1]. Wanted eigenvalues below cut map to
/// (T_d(t(cut))^-1 .. ~1], the rest to [-1, 1] / |T_d(t(low))|.
inline Eigen::MatrixXcd chebyshev_filter(const CsrMatrix& H, const Eigen::MatrixXcd& X, int degree, double cut,
                                         double top, double low) {
    const double e = 0.5 * (top - cut);
    const double c = 0.5 * (top + cut);
    const double sigma1 = e / (low - c);
    double sigma = sigma1;
    Eigen::MatrixXcd prev = X;
    Eigen::MatrixXcd cur = (H.apply(X) - c * X) * (sigma1 / e);
    for (int i = 2; i <= degree; ++i) {
        const double sigma_next = 1.0 / (2.0 / sigma1 - sigma);
        Eigen::MatrixXcd next = (H.apply(cur) - c * cur) * (2.0 * sigma_next / e) - (sigma * sigma_next) * prev;
        prev.swap(cur);
        cur.swap(next);
        sigma = sigma_next;
    }
    return cur;
}

inline Eigen::Index round_up(Eigen::Index v, Eigen::Index b) { return ((v + b - 1) / b) * b; }

inline std::vector<double> residual_norms(const CsrMatrix& H, const Eigen::MatrixXcd& X, const Eigen::VectorXd& lambda) {
    const Eigen::MatrixXcd R = H.apply(X) - X * lambda.asDiagonal();
    std::vector<double> out(static_cast<std::size_t>(X.cols()));
    for (Eigen::Index i = 0; i < X.cols(); ++i) out[static_cast<std::size_t>(i)] = R.col(i).norm();
    return out;
}

inline Spectrum solve_dense(const CsrMatrix& H, int k, const SolverOptions& opt) {
    const Eigen::MatrixXcd dense = H.to_dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw ConvergenceFailure("dense eigensolver failed", {}, {}, 0);
    Spectrum s;
    s.method = "dense";
    s.tolerance = opt.tol;
    const Eigen::VectorXd lambda = es.eigenvalues().head(k);
    const Eigen::MatrixXcd X = es.eigenvectors().leftCols(k);
    s.values.assign(lambda.data(), lambda.data() + k);
    s.residuals = residual_norms(H, X, lambda);
    if (opt.want_vectors) s.vectors = X;
    return s;
}

inline Spectrum solve_lanczos(const CsrMatrix& H, int k, const SolverOptions& opt) {
    const auto N = static_cast<Eigen::Index>(H.dimension());
    const Eigen::Index b = std::max(1, opt.block_size);
    const Eigen::Index nev = std::min<Eigen::Index>(k + std::max(0, opt.buffer), N);
    const int cap = opt.max_iterations > 0 ? opt.max_iterations : 50 * static_cast<int>(nev);

    if (round_up(2 * nev + 2 * b, b) + b > N) {
        throw ValidationError("operator too small for the Lanczos path; use the dense solver");
    }

    // Pilot: unfiltered block Lanczos on -H. The j-th smallest Ritz value is an
    // upper bound on the j-th eigenvalue, so the cut keeps >= nev eigenvalues below it.
    const Eigen::Index pilot_size = std::min(round_up(2 * nev + 40, b), round_up(N - 2 * b, b) - b);
    BlockLanczos pilot([&H](const Eigen::MatrixXcd& X) -> Eigen::MatrixXcd { return -H.apply(X); }, N, b,
                       pilot_size, opt.seed ^ 0x9e3779b97f4a7c15ULL);
    int iterations = pilot.expand();
    const RitzState pr = pilot.ritz();
    const Eigen::Index cut_index = std::min<Eigen::Index>(pilot_size - 1, nev + nev / 4);
    const double low = -pr.theta[0];
    const double cut = -pr.theta[cut_index];
    const double top = H.gershgorin_upper();

    BlockOp op;
    const bool filtered = opt.filter_degree > 1 && cut < top - 1e-6 * std::abs(top) && low < cut;
    if (filtered) {
        op = [&H, degree = opt.filter_degree, cut, top, low](const Eigen::MatrixXcd& X) {
            return chebyshev_filter(H, X, degree, cut, top, low);
        };
    } else {
        op = [&H](const Eigen::MatrixXcd& X) -> Eigen::MatrixXcd { return -H.apply(X); };
    }

    const Eigen::Index m = std::min(round_up(2 * nev + 2 * b, b), round_up(N - 2 * b, b) - b);
    const Eigen::Index new_blocks = std::max<Eigen::Index>(1, (m - nev) / (2 * b));
    const Eigen::Index keep = m - new_blocks * b;
    BlockLanczos lanczos(op, N, b, m, opt.seed);

    double ptol = 1e-10;
    int steps = 0;
    Eigen::VectorXd best_values;
    std::vector<double> best_residuals;
    while (true) {
        steps += lanczos.expand();
        const RitzState r = lanczos.ritz();
        const double scale = std::max(std::abs(r.theta[0]), std::abs(r.theta[r.theta.size() - 1]));
        bool converged = true;
        for (Eigen::Index i = 0; i < nev; ++i) {
            if (r.estimate[i] > ptol * std::max(std::abs(r.theta[i]), 1e-6 * scale)) {
                converged = false;
                break;
            }
        }
        if (converged || steps >= cap) {
            // Rayleigh-Ritz with H on the wanted subspace
            Eigen::MatrixXcd X = lanczos.vectors(r, nev);
            const Eigen::MatrixXcd G = X.adjoint() * H.apply(X);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (G + G.adjoint()));
            const Eigen::VectorXd lambda = es.eigenvalues();
            X = X * es.eigenvectors();
            const std::vector<double> res = residual_norms(H, X, lambda);
            const bool ok = std::all_of(res.begin(), res.begin() + k, [&](double v) { return v <= opt.tol; });
            best_values = lambda;
            best_residuals = res;
            if (ok) {
                Spectrum s;
                s.method = filtered ? "lanczos(chebyshev)" : "lanczos";
                s.iterations = iterations + steps;
                s.tolerance = opt.tol;
                s.values.assign(lambda.data(), lambda.data() + k);
                s.residuals.assign(res.begin(), res.begin() + k);
                if (opt.want_vectors) s.vectors = X.leftCols(k);
                return s;
            }
            if (steps >= cap) break;
            ptol = std::max(ptol * 1e-2, 1e-15);
        }
        lanczos.restart(r, keep);
    }
    std::vector<double> vals(best_values.data(), best_values.data() + k);
    best_residuals.resize(static_cast<std::size_t>(k));
    throw ConvergenceFailure("Lanczos did not reach the residual tolerance within " + std::to_string(cap) + " block steps",
                             std::move(vals), std::move(best_residuals), iterations + steps);
}

}  // namespace detail

/// k lowest eigenpairs of a Hermitian matrix, ascending.
inline Spectrum solve_lowest(const CsrMatrix& H, int k, const SolverOptions& opt = {}) {
    const std::size_t N = H.dimension();
    if (k < 1 || static_cast<std::size_t>(k) > N) throw ValidationError("k must satisfy 1 <= k <= N");
    if (!(opt.tol > 0.0)) throw ValidationError("solver tolerance must be positive");
    SolverMethod method = opt.method;
    if (method == SolverMethod::Auto) method = N <= opt.dense_limit ? SolverMethod::Dense : SolverMethod::Lanczos;
    Spectrum s = method == SolverMethod::Dense ? detail::solve_dense(H, k, opt) : detail::solve_lanczos(H, k, opt);
    for (std::size_t i = 0; i < s.residuals.size(); ++i) {
        if (!(s.residuals[i] <= opt.tol)) {
            throw ConvergenceFailure("eigenpair residual above tolerance", s.values, s.residuals, s.iterations);
        }
    }
    return s;
}

inline Spectrum solve_lowest(const DiscreteOperator& op, int k, const SolverOptions& opt = {}) {
    Spectrum s = solve_lowest(op.matrix(), k, opt);
    s.grid = op.grid();
    return s;
}

}  // namespace aclandau
