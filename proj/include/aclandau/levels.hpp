#pragma once

// From raw spectra to Landau-level statements: bulk filtering, clustering,
// degeneracy counting, ladder-operator matrix elements and conservation of
// the orbit center.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "discrete.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "solver.hpp"

namespace aclandau {

/// A state is bulk when at least `threshold` of its probability lies in
/// [-L + margin, L - margin]^2.
struct BulkFilter {
    double margin = 4.0;
    double threshold = 0.90;
};

struct ClusterOptions {
    double gap_threshold = 0.5;
    BulkFilter bulk;
};

struct LevelCluster {
    int level = 0;
    std::vector<std::size_t> members;  ///< indices into the spectrum
    std::vector<double> energies;
    double mean = 0.0;
    double predicted = 0.0;
    bool bulk = true;
    bool complete = true;  ///< spectrum extends a full gap above the cluster

    int count() const noexcept { return static_cast<int>(members.size()); }
    double deviation() const noexcept { return mean - predicted; }
};

namespace detail {

inline const Grid2D& spectrum_grid(const Spectrum& s) {
    if (!s.grid) throw ValidationError("spectrum carries no grid");
    return *s.grid;
}

inline void require_vectors(const Spectrum& s) {
    if (!s.has_vectors()) throw NeedEigenvectors("operation needs eigenvectors; rerun the solver with want_vectors");
}

}  // namespace detail

/// Probability of each eigenvector inside [-L + margin, L - margin]^2.
inline std::vector<double> interior_mass(const Spectrum& s, double margin) {
    detail::require_vectors(s);
    const Grid2D& g = detail::spectrum_grid(s);
    const double limit = g.half_extent() - margin + 1e-12;
    std::vector<Eigen::Index> inside;
    for (std::size_t k = 0; k < g.size(); ++k)
        if (std::abs(g.x_at(k)) <= limit && std::abs(g.y_at(k)) <= limit) inside.push_back(static_cast<Eigen::Index>(k));
    std::vector<double> mass(s.size(), 0.0);
    for (std::size_t c = 0; c < s.size(); ++c) {
        const auto col = s.vectors.col(static_cast<Eigen::Index>(c));
        double m = 0.0;
        for (auto k : inside) m += std::norm(col[k]);
        mass[c] = m / col.squaredNorm();
    }
    return mass;
}

inline std::vector<bool> bulk_mask(const Spectrum& s, const BulkFilter& f) {
    const auto mass = interior_mass(s, f.margin);
    std::vector<bool> out(mass.size());
    for (std::size_t i = 0; i < mass.size(); ++i) out[i] = mass[i] >= f.threshold;
    return out;
}

/// Groups bulk eigenvalues <= window_max_energy into levels. A new cluster
/// starts wherever consecutive bulk energies differ by more than the gap
/// threshold; clusters are labeled by rank and compared with zero_point + nu.
inline std::vector<LevelCluster> cluster_levels(const Spectrum& s, double zero_point, double window_max_energy,
                                                const ClusterOptions& opt = {}) {
    const auto bulk = bulk_mask(s, opt.bulk);
    std::vector<LevelCluster> clusters;
    std::vector<double> considered;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double e = s.values[i];
        if (e > window_max_energy || !bulk[i]) continue;
        considered.push_back(e);
        if (clusters.empty() || e - clusters.back().energies.back() > opt.gap_threshold) {
            clusters.emplace_back();
            clusters.back().level = static_cast<int>(clusters.size()) - 1;
        }
        clusters.back().members.push_back(i);
        clusters.back().energies.push_back(e);
    }
    const double highest = s.values.empty() ? -INFINITY : s.values.back();
    for (auto& c : clusters) {
        double sum = 0.0;
        for (double e : c.energies) sum += e;
        c.mean = sum / static_cast<double>(c.energies.size());
        c.predicted = zero_point + c.level;
        c.complete = highest >= c.energies.back() + opt.gap_threshold;
        for (double e : c.energies) {
            if (std::abs(e - c.mean) > opt.gap_threshold) {
                throw ClusteringAmbiguous("cluster " + std::to_string(c.level) + " spans more than the gap threshold",
                                          considered);
            }
        }
    }
    return clusters;
}

struct DegeneracyEstimate {
    int measured = 0;
    int predicted = 0;
    double threshold = 0.0;  ///< states counted strictly below this energy
    double area = 0.0;

    double relative_error() const noexcept {
        return predicted == 0 ? 0.0 : static_cast<double>(measured - predicted) / predicted;
    }
};

/// Flux counting for the lowest level. Predicted: round((2L)^2 / 2 pi).
/// Measured: eigenvalues below E_0 + 1 - 0.05, i.e. the lowest level
/// together with its edge branch, up to the next level.
inline DegeneracyEstimate degeneracy_estimate(const Grid2D& g, const Spectrum& s, const FieldConfig& cfg) {
    if (cfg.kind == FieldKind::Free) throw ZeroField("free configuration has no degenerate levels");
    DegeneracyEstimate d;
    d.area = 4.0 * g.half_extent() * g.half_extent();
    d.predicted = static_cast<int>(std::lround(d.area / (2.0 * std::numbers::pi)));
    d.threshold = predicted_ground_level(cfg) + 1.0 - 0.05;
    if (s.values.empty() || s.values.back() < d.threshold) {
        throw ValidationError("spectrum does not reach the counting threshold; request more eigenvalues");
    }
    d.measured = static_cast<int>(std::count_if(s.values.begin(), s.values.end(), [&](double e) { return e < d.threshold; }));
    return d;
}

/// Applies a_AC = (Pi_x + i sigma Pi_y) / sqrt(2) column by column.
class LadderOperator {
public:
    LadderOperator(const FieldConfig& cfg, const Grid2D& g)
        : px_(build_kinematic_momentum(cfg, g, Axis::X)),
          py_(build_kinematic_momentum(cfg, g, Axis::Y)),
          sigma_(cfg.sigma()) {}

    Eigen::MatrixXcd lower(const Eigen::MatrixXcd& psi) const {
        return (px_.apply(psi) + cplx(0.0, sigma_) * py_.apply(psi)) / std::numbers::sqrt2;
    }
    Eigen::MatrixXcd raise(const Eigen::MatrixXcd& psi) const {
        return (px_.apply(psi) - cplx(0.0, sigma_) * py_.apply(psi)) / std::numbers::sqrt2;
    }

private:
    DiscreteOperator px_, py_;
    int sigma_;
};

struct LadderBlock {
    int level = 0;  ///< block <nu| a |nu + 1>
    std::vector<double> singular_values;
    std::vector<double> dominant;  ///< singular values >= half the largest
    double expected = 0.0;         ///< sqrt(nu + 1)
    double max_relative_deviation = 0.0;
    double leakage = 0.0;          ///< max ||(1 - P_nu) a psi|| over psi in level nu + 1
};

struct LadderReport {
    std::vector<LadderBlock> blocks;
    std::vector<double> annihilation_norms;  ///< ||a psi|| over the lowest cluster
    double max_annihilation = 0.0;
};

inline Eigen::MatrixXcd cluster_vectors(const Spectrum& s, const LevelCluster& c) {
    Eigen::MatrixXcd B(s.vectors.rows(), c.count());
    for (int i = 0; i < c.count(); ++i) B.col(i) = s.vectors.col(static_cast<Eigen::Index>(c.members[static_cast<std::size_t>(i)]));
    return B;
}

inline LadderReport ladder_check(const Spectrum& s, const FieldConfig& cfg, const std::vector<LevelCluster>& clusters,
                                 int max_level) {
    detail::require_vectors(s);
    if (cfg.kind == FieldKind::Free) throw ZeroField("free configuration has no ladder structure");
    const LadderOperator a(cfg, detail::spectrum_grid(s));
    LadderReport report;
    for (int nu = 0; nu <= max_level && nu + 1 < static_cast<int>(clusters.size()); ++nu) {
        const Eigen::MatrixXcd lo = cluster_vectors(s, clusters[static_cast<std::size_t>(nu)]);
        const Eigen::MatrixXcd hi = cluster_vectors(s, clusters[static_cast<std::size_t>(nu) + 1]);
        const Eigen::MatrixXcd image = a.lower(hi);
        const Eigen::MatrixXcd M = lo.adjoint() * image;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
        LadderBlock block;
        block.level = nu;
        block.expected = std::sqrt(nu + 1.0);
        const Eigen::VectorXd sv = svd.singularValues();
        block.singular_values.assign(sv.data(), sv.data() + sv.size());
        const double largest = sv.size() > 0 ? sv[0] : 0.0;
        for (double v : block.singular_values) {
            if (v >= 0.5 * largest) {
                block.dominant.push_back(v);
                block.max_relative_deviation = std::max(block.max_relative_deviation, std::abs(v / block.expected - 1.0));
            }
        }
        const Eigen::MatrixXcd outside = image - lo * M;
        for (Eigen::Index c = 0; c < outside.cols(); ++c) block.leakage = std::max(block.leakage, outside.col(c).norm());
        report.blocks.push_back(std::move(block));
    }
    if (!clusters.empty()) {
        const Eigen::MatrixXcd ground = a.lower(cluster_vectors(s, clusters.front()));
        for (Eigen::Index c = 0; c < ground.cols(); ++c) {
            report.annihilation_norms.push_back(ground.col(c).norm());
            report.max_annihilation = std::max(report.max_annihilation, ground.col(c).norm());
        }
    }
    return report;
}

struct OrbitCenterReport {
    bool skipped = false;
    std::string note;
    std::vector<double> residual_x;  ///< ||[H, X0] psi||
    std::vector<double> residual_y;  ///< ||[H, Y0] psi||
    double max_residual = 0.0;
};

/// Conservation of X0 = x + sigma Pi_y and Y0 = y - sigma Pi_x on the
/// states of one cluster. In the continuum [H, X0] = [H, Y0] = 0.
inline OrbitCenterReport orbit_center_check(const Spectrum& s, const FieldConfig& cfg, const LevelCluster& cluster) {
    OrbitCenterReport r;
    if (cfg.kind == FieldKind::Free) {
        r.skipped = true;
        r.note = "ZeroField: no orbit-center conservation without a field";
        return r;
    }
    detail::require_vectors(s);
    const Grid2D& g = detail::spectrum_grid(s);
    const auto H = build_hamiltonian(cfg, g);
    const auto px = build_kinematic_momentum(cfg, g, Axis::X);
    const auto py = build_kinematic_momentum(cfg, g, Axis::Y);
    const double sigma = cfg.sigma();

    Eigen::VectorXd xs(static_cast<Eigen::Index>(g.size())), ys(static_cast<Eigen::Index>(g.size()));
    for (std::size_t k = 0; k < g.size(); ++k) {
        xs[static_cast<Eigen::Index>(k)] = g.x_at(k);
        ys[static_cast<Eigen::Index>(k)] = g.y_at(k);
    }
    auto x0 = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
        return xs.cast<cplx>().cwiseProduct(v) + sigma * py.apply(v);
    };
    auto y0 = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
        return ys.cast<cplx>().cwiseProduct(v) - sigma * px.apply(v);
    };
    for (std::size_t idx : cluster.members) {
        const Eigen::VectorXcd psi = s.vectors.col(static_cast<Eigen::Index>(idx));
        const Eigen::VectorXcd hpsi = H.apply(psi);
        const double rx = (H.apply(x0(psi)) - x0(hpsi)).norm();
        const double ry = (H.apply(y0(psi)) - y0(hpsi)).norm();
        r.residual_x.push_back(rx);
        r.residual_y.push_back(ry);
        r.max_residual = std::max({r.max_residual, rx, ry});
    }
    return r;
}

}  // namespace aclandau
