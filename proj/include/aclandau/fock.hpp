#pragma once

// Truncated Fock-space realization of the supersymmetric structure
// H = Q Q^dag + Q^dag Q with Q = a f^dag. Basis |n_B, n_F>, index 2 n_B + n_F,
// n_B = 0..N_B and n_F in {0, 1}.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace aclandau {

struct FockAlgebra {
    int nb = 0;  ///< truncation depth N_B
    Eigen::MatrixXd a, adag, f, fdag, tau, number_b, number_f, Q, Qdag, H;

    Eigen::Index dimension() const noexcept { return 2 * (nb + 1); }
    static Eigen::Index index(int n_b, int n_f) noexcept { return 2 * n_b + n_f; }
};

inline FockAlgebra build_fock_algebra(int nb) {
    if (nb < 2) throw ValidationError("N_B must be >= 2");
    FockAlgebra alg;
    alg.nb = nb;
    Eigen::MatrixXd boson = Eigen::MatrixXd::Zero(nb + 1, nb + 1);
    for (int n = 1; n <= nb; ++n) boson(n - 1, n) = std::sqrt(static_cast<double>(n));
    Eigen::Matrix2d fermion;
    fermion << 0.0, 1.0, 0.0, 0.0;  // f|1> = |0>
    const Eigen::MatrixXd id_b = Eigen::MatrixXd::Identity(nb + 1, nb + 1);
    const Eigen::Matrix2d id_f = Eigen::Matrix2d::Identity();

    auto kron = [](const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
        Eigen::MatrixXd K(A.rows() * B.rows(), A.cols() * B.cols());
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            for (Eigen::Index j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
        return K;
    };

    alg.a = kron(boson, id_f);
    alg.adag = alg.a.transpose();
    alg.f = kron(id_b, fermion);
    alg.fdag = alg.f.transpose();
    Eigen::VectorXd counts(2 * (nb + 1));
    for (int n = 0; n <= nb; ++n) counts.segment(2 * n, 2).setConstant(n);
    alg.number_b = counts.asDiagonal();
    alg.number_f = alg.fdag * alg.f;
    alg.tau = Eigen::MatrixXd::Identity(alg.dimension(), alg.dimension()) - 2.0 * alg.number_f;
    alg.Q = alg.a * alg.fdag;
    alg.Qdag = alg.Q.transpose();
    alg.H = alg.Q * alg.Qdag + alg.Qdag * alg.Q;
    return alg;
}

struct SusyReport {
    int nb = 0;
    double fermion_nilpotent = 0.0;     ///< max |ff|, |f^dag f^dag|
    double fermion_anticommutator = 0.0;///< max |f f^dag + f^dag f - 1|
    double fermion_commutator = 0.0;    ///< max |[f, f^dag] - tau|
    double boson_commutator = 0.0;      ///< max |[a, a^dag] - 1| off the edge
    double number_operator = 0.0;       ///< max |a^dag a - N_B|
    double hamiltonian_identity = 0.0;  ///< max |H - a^dag a - (1 - [f, f^dag]) / 2| off the edge
    double q_nilpotent = 0.0;           ///< max |Q Q|
    double vacuum_q = 0.0;              ///< ||Q |0,0>||
    double vacuum_qdag = 0.0;           ///< ||Q^dag |0,0>||
    double q_ladder = 0.0;              ///< max ||Q |n+1,0> - sqrt(n+1) |n,1>||
    std::vector<double> spectrum;       ///< H on the off-edge subspace, ascending
    double pairing_defect = 0.0;
    bool paired = false;

    double max_identity_residual() const noexcept {
        return std::max({fermion_nilpotent, fermion_anticommutator, fermion_commutator, boson_commutator, number_operator,
                         hamiltonian_identity, q_nilpotent, vacuum_q, vacuum_qdag, q_ladder});
    }
};

namespace detail {

/// Largest |entry| among rows with n_B <= row_limit.
inline double max_abs_rows(const Eigen::MatrixXd& m, int row_limit) {
    double worst = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        if (r / 2 > row_limit) continue;
        worst = std::max(worst, m.row(r).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace detail

inline SusyReport susy_check(const FockAlgebra& alg) {
    const Eigen::Index d = alg.dimension();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
    const int edge = alg.nb - 1;  // last boson level not touched by the truncation
    SusyReport r;
    r.nb = alg.nb;
    r.fermion_nilpotent = std::max((alg.f * alg.f).cwiseAbs().maxCoeff(), (alg.fdag * alg.fdag).cwiseAbs().maxCoeff());
    const Eigen::MatrixXd anti = alg.f * alg.fdag + alg.fdag * alg.f;
    const Eigen::MatrixXd comm_f = alg.f * alg.fdag - alg.fdag * alg.f;
    r.fermion_anticommutator = (anti - I).cwiseAbs().maxCoeff();
    r.fermion_commutator = (comm_f - alg.tau).cwiseAbs().maxCoeff();
    r.boson_commutator = detail::max_abs_rows(alg.a * alg.adag - alg.adag * alg.a - I, edge);
    r.number_operator = (alg.adag * alg.a - alg.number_b).cwiseAbs().maxCoeff();
    r.hamiltonian_identity = detail::max_abs_rows(alg.H - alg.number_b - 0.5 * (I - comm_f), edge);
    r.q_nilpotent = (alg.Q * alg.Q).cwiseAbs().maxCoeff();

    const Eigen::VectorXd vacuum = I.col(FockAlgebra::index(0, 0));
    r.vacuum_q = (alg.Q * vacuum).norm();
    r.vacuum_qdag = (alg.Qdag * vacuum).norm();
    for (int n = 0; n < alg.nb; ++n) {
        const Eigen::VectorXd image = alg.Q * I.col(FockAlgebra::index(n + 1, 0));
        const Eigen::VectorXd expected = std::sqrt(n + 1.0) * I.col(FockAlgebra::index(n, 1));
        r.q_ladder = std::max(r.q_ladder, (image - expected).norm());
    }

    // Off-edge subspace: every state except |N_B, 1>, whose partner lies above the truncation.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < d; ++i)
        if (i != FockAlgebra::index(alg.nb, 1)) keep.push_back(i);
    Eigen::MatrixXd sub(keep.size(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j)
            sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = alg.H(keep[i], keep[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    r.spectrum.assign(ev.data(), ev.data() + ev.size());

    // one zero mode, then equal pairs
    r.pairing_defect = std::abs(r.spectrum.front());
    r.paired = r.spectrum.size() % 2 == 1;
    for (std::size_t i = 1; i + 1 < r.spectrum.size(); i += 2) {
        r.pairing_defect = std::max(r.pairing_defect, std::abs(r.spectrum[i] - r.spectrum[i + 1]));
        if (r.spectrum[i] < 0.5) r.paired = false;
    }
    r.paired = r.paired && r.pairing_defect <= 1e-14;
    return r;
}

}  // namespace aclandau
