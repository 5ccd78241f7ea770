#pragma once

// Pipelines behind the command-line subcommands. Each returns the report it
// wrote together with the process exit code.

#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "../aclandau.hpp"
#include "config.hpp"
#include "report.hpp"

namespace aclandau::cli {

enum ExitCode : int { exit_ok = 0, exit_validation = 2, exit_solver = 3, exit_ambiguous = 4 };

struct CommandResult {
    int exit_code = exit_ok;
    nlohmann::json report;
};

namespace detail {

inline nlohmann::json cluster_json(const LevelCluster& c) {
    return {{"level", c.level},   {"count", c.count()},         {"mean", c.mean},
            {"predicted", c.predicted}, {"deviation", c.deviation()}, {"complete", c.complete},
            {"bulk", c.bulk},     {"energies", c.energies}};
}

inline nlohmann::json grid_json(const Grid2D& g) {
    return {{"L", g.half_extent()}, {"n", g.points_per_axis()}, {"h", g.spacing()}, {"N", g.size()},
            {"box_side", g.box_side()}};
}

inline Spectrum solve(const FieldConfig& field, const Grid2D& g, const RunConfig& cfg) {
    return solve_lowest(build_hamiltonian(field, g), cfg.k, cfg.solver_options());
}

inline void emit(const RunConfig& cfg, const std::string& stem, const nlohmann::json& report) {
    if (cfg.wants("json")) write_json_report(std::filesystem::path(cfg.output) / (stem + ".json"), report);
}

/// Lowest-cluster mean, or NaN when no bulk state falls in the window.
inline double lowest_mean(const std::vector<LevelCluster>& clusters) {
    return clusters.empty() ? std::numeric_limits<double>::quiet_NaN() : clusters.front().mean;
}

inline Eigen::VectorXcd centered_gaussian(const Grid2D& g) {
    return sample(g, [](double x, double y) { return cplx(std::exp(-0.5 * (x * x + y * y)), 0.0); });
}

inline nlohmann::json fit_json(const std::vector<double>& h, const std::vector<double>& err) {
    nlohmann::json j{{"h", h}, {"error", err}};
    bool positive = true;
    for (double e : err) positive = positive && e > 0.0 && std::isfinite(e);
    if (!positive || h.size() < 3) {
        j["fitted"] = false;
        j["monotone"] = false;
        return j;
    }
    const OrderFit f = fit_order(h, err);
    j["fitted"] = true;
    j["order"] = f.order;
    j["r_squared"] = f.r_squared;
    j["monotone"] = f.monotone;
    return j;
}

}  // namespace detail

inline CommandResult cmd_spectrum(const RunConfig& cfg) {
    cfg.validate();
    const FieldConfig field = cfg.field();
    const Grid2D g = cfg.grid();
    CommandResult result;
    nlohmann::json& r = result.report;
    r["command"] = "spectrum";
    r["config"] = cfg.to_json();
    r["grid"] = detail::grid_json(g);
    r["field"] = {{"name", field.name()}, {"sigma", field.sigma()}};

    Spectrum s;
    try {
        s = detail::solve(field, g, cfg);
    } catch (const ConvergenceFailure& e) {
        r["status"] = "unconverged";
        r["message"] = e.what();
        r["eigenvalues"] = e.values();
        r["residuals"] = e.residuals();
        r["solver"] = {{"iterations", e.iterations()}, {"converged", false}};
        detail::emit(cfg, "spectrum", r);
        if (cfg.wants("csv")) write_csv(std::filesystem::path(cfg.output) / "eigenvalues.csv", e.values());
        result.exit_code = exit_solver;
        return result;
    }
    s.grid = g;
    r["status"] = "ok";
    r["eigenvalues"] = s.values;
    r["residuals"] = s.residuals;
    r["solver"] = {{"method", s.method}, {"iterations", s.iterations}, {"tolerance", s.tolerance}, {"converged", true}};
    if (cfg.wants("csv")) write_csv(std::filesystem::path(cfg.output) / "eigenvalues.csv", s.values);

    if (field.kind == FieldKind::Free) {
        const auto table = box_levels(g, cfg.k);
        nlohmann::json rows = nlohmann::json::array();
        double worst = 0.0;
        for (std::size_t i = 0; i < table.size(); ++i) {
            const double rel = std::abs(s.values[i] / table[i].continuum - 1.0);
            worst = std::max(worst, rel);
            rows.push_back({{"p", table[i].p}, {"q", table[i].q}, {"continuum", table[i].continuum},
                            {"discrete", table[i].discrete}, {"computed", s.values[i]}, {"relative_error", rel}});
        }
        r["box_oracle"] = rows;
        r["box_max_relative_error"] = worst;
        detail::emit(cfg, "spectrum", r);
        return result;
    }

    const double zero_point = predicted_ground_level(field);
    r["field"]["predicted_ground"] = zero_point;
    r["window"] = cfg.resolved_window();
    try {
        const auto clusters = cluster_levels(s, zero_point, cfg.resolved_window(), cfg.cluster_options());
        nlohmann::json cj = nlohmann::json::array();
        for (const auto& c : clusters) cj.push_back(detail::cluster_json(c));
        r["clusters"] = cj;
        r["bulk_mass"] = interior_mass(s, cfg.bulk_margin);
    } catch (const ClusteringAmbiguous& e) {
        r["status"] = "ambiguous";
        r["message"] = e.what();
        r["clustered_energies"] = e.energies();
        result.exit_code = exit_ambiguous;
    }
    detail::emit(cfg, "spectrum", r);
    if (cfg.wants("json") && r.contains("clusters")) {
        write_json_report(std::filesystem::path(cfg.output) / "clusters.json",
                          {{"config", r["config"]}, {"clusters", r["clusters"]}, {"field", r["field"]}});
    }
    return result;
}

inline CommandResult cmd_gauge_check(const RunConfig& cfg) {
    cfg.validate();  // rejects a non-harmonic chi before any computation
    const FieldConfig from = cfg.field();
    const FieldConfig to = make_field(cfg.compare, cfg.sigma);
    if (!from.is_ac() || !to.is_ac()) throw UnsupportedKind("gauge-check compares AC configurations");
    const GaugeFunction chi(cfg.chi);
    CommandResult result;
    nlohmann::json& r = result.report;
    r["command"] = "gauge-check";
    r["config"] = cfg.to_json();
    r["from"] = from.name();
    r["to"] = to.name();

    const Grid2D probe = cfg.grid();
    const GaugeComparison cmp = compare_gauge(from, to, chi, probe);
    r["field_strength_max_difference"] = cmp.max_field_strength_difference;
    r["potential_mismatch"] = cmp.max_potential_mismatch;
    r["potentials_consistent"] = cmp.potentials_consistent;
    if (!cmp.potentials_consistent) r["warning"] = "a' - a - grad(chi) is not zero: chi does not relate the two gauges";

    std::vector<double> spacings = cfg.levels;
    if (spacings.empty()) spacings.push_back(probe.spacing());
    nlohmann::json runs = nlohmann::json::array();
    std::vector<double> gaps;
    const double zero_point = predicted_ground_level(from);
    for (double h : spacings) {
        const Grid2D g = Grid2D::from_spacing(cfg.L, h);
        Spectrum a = detail::solve(from, g, cfg);
        Spectrum b = detail::solve(to, g, cfg);
        a.grid = b.grid = g;
        const auto ca = cluster_levels(a, zero_point, cfg.resolved_window(), cfg.cluster_options());
        const auto cb = cluster_levels(b, zero_point, cfg.resolved_window(), cfg.cluster_options());
        nlohmann::json diffs = nlohmann::json::array();
        for (std::size_t i = 0; i < std::min(ca.size(), cb.size()); ++i) diffs.push_back(std::abs(ca[i].mean - cb[i].mean));
        const double gap = std::abs(detail::lowest_mean(ca) - detail::lowest_mean(cb));
        gaps.push_back(gap);
        runs.push_back({{"h", g.spacing()}, {"from_means", nlohmann::json::array()}, {"to_means", nlohmann::json::array()},
                        {"mean_differences", diffs}, {"lowest_gap", gap}});
        for (const auto& c : ca) runs.back()["from_means"].push_back(c.mean);
        for (const auto& c : cb) runs.back()["to_means"].push_back(c.mean);
    }
    r["refinements"] = runs;
    if (spacings.size() >= 3) r["order"] = detail::fit_json(spacings, gaps);
    detail::emit(cfg, "gauge_check", r);
    return result;
}

inline CommandResult cmd_duality(const RunConfig& cfg) {
    cfg.validate();
    if (!cfg.area) throw ValidationError("duality needs the reference area S");
    CommandResult result;
    nlohmann::json& r = result.report;
    r["command"] = "duality";
    r["config"] = cfg.to_json();

    StandardLandauParams charge;
    DipoleParams dipole;
    if (cfg.side == "charge") {
        charge = StandardLandauParams::make(cfg.charge, cfg.flux, *cfg.area, cfg.mass, cfg.hbar);
        dipole = duality_map(charge, {cfg.moment, cfg.epsilon0, cfg.light_speed});
        charge.line_density = dipole.line_density;
    } else {
        if (*cfg.area == 0.0) throw DegenerateArea("reference area S is zero");
        dipole.magnetic_moment = cfg.moment;
        dipole.line_density = cfg.line_density;
        dipole.area = *cfg.area;
        dipole.charge_density = cfg.line_density / *cfg.area;
        dipole.epsilon0 = cfg.epsilon0;
        dipole.light_speed = cfg.light_speed;
        dipole.mass = cfg.mass;
        dipole.hbar = cfg.hbar;
        charge = duality_map(dipole, cfg.charge);
    }
    const double de_charge = level_separation(charge);
    const double de_dipole = level_separation(dipole);
    r["charge"] = {{"q", charge.charge},        {"flux", charge.flux},       {"S", charge.area},
                   {"B", charge.field},         {"omega", charge.omega},     {"magnetic_length", charge.magnetic_length},
                   {"mass", charge.mass},       {"hbar", charge.hbar}};
    r["dipole"] = {{"mu", dipole.magnetic_moment}, {"lambda", dipole.line_density}, {"rho0", dipole.charge_density},
                   {"S", dipole.area},           {"eps0", dipole.epsilon0},       {"c", dipole.light_speed}};
    r["delta_e_charge"] = de_charge;
    r["delta_e_dipole"] = de_dipole;
    r["relative_difference"] = de_charge == 0.0 ? 0.0 : std::abs(de_dipole - de_charge) / std::abs(de_charge);
    const StandardLandauParams back = duality_map(dipole, charge.charge);
    r["round_trip_q_flux"] = back.charge * back.flux;
    r["q_flux"] = charge.charge * charge.flux;

    if (cfg.numeric) {
        const Grid2D g = cfg.grid();
        const int sigma_ac = derive_units(dipole.physical()).sigma;
        const int sigma_sl = charge.omega >= 0.0 ? 1 : -1;
        const FieldConfig ac = FieldConfig::symmetric(sigma_ac);
        const FieldConfig sl = FieldConfig::standard_landau(sigma_sl);
        Spectrum sa = detail::solve(ac, g, cfg), ss = detail::solve(sl, g, cfg);
        sa.grid = ss.grid = g;
        const auto window = [&](const FieldConfig& f) { return cfg.window ? *cfg.window : predicted_ground_level(f) + 1.5; };
        const auto ca = cluster_levels(sa, predicted_ground_level(ac), window(ac), cfg.cluster_options());
        const auto cs = cluster_levels(ss, predicted_ground_level(sl), window(sl), cfg.cluster_options());
        if (ca.size() < 2 || cs.size() < 2) {
            throw ClusteringAmbiguous("numerical cross-check needs two levels on each side; raise k", {});
        }
        const double gap_ac = (ca[1].mean - ca[0].mean) * de_dipole;
        const double gap_sl = (cs[1].mean - cs[0].mean) * de_charge;
        r["numeric"] = {{"grid", detail::grid_json(g)},
                        {"gap_dipole", gap_ac},
                        {"gap_charge", gap_sl},
                        {"relative_difference", std::abs(gap_ac - gap_sl) / std::abs(gap_sl)}};
    }
    detail::emit(cfg, "duality", r);
    return result;
}

inline CommandResult cmd_susy(const RunConfig& cfg) {
    cfg.validate();
    const FockAlgebra alg = build_fock_algebra(cfg.nb);
    const SusyReport s = susy_check(alg);
    CommandResult result;
    nlohmann::json& r = result.report;
    r["command"] = "susy";
    r["config"] = cfg.to_json();
    r["nb"] = s.nb;
    r["residuals"] = {{"fermion_nilpotent", s.fermion_nilpotent},
                      {"fermion_anticommutator", s.fermion_anticommutator},
                      {"fermion_commutator", s.fermion_commutator},
                      {"boson_commutator", s.boson_commutator},
                      {"number_operator", s.number_operator},
                      {"hamiltonian_identity", s.hamiltonian_identity},
                      {"q_nilpotent", s.q_nilpotent},
                      {"vacuum_q", s.vacuum_q},
                      {"vacuum_qdag", s.vacuum_qdag},
                      {"q_ladder", s.q_ladder}};
    r["max_residual"] = s.max_identity_residual();
    r["spectrum"] = s.spectrum;
    r["paired"] = s.paired;
    r["pairing_defect"] = s.pairing_defect;
    detail::emit(cfg, "susy", r);
    return result;
}

inline CommandResult cmd_convergence(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.levels.size() < 3) throw ValidationError("convergence needs at least three refinement levels");
    const FieldConfig field = cfg.field();
    CommandResult result;
    nlohmann::json& r = result.report;
    r["command"] = "convergence";
    r["config"] = cfg.to_json();
    nlohmann::json series = nlohmann::json::object();
    std::vector<double> hs;
    for (double h : cfg.levels) hs.push_back(Grid2D::from_spacing(cfg.L, h).spacing());

    if (field.kind == FieldKind::Free) {
        std::vector<double> err;
        for (double h : hs) {
            const Grid2D g = Grid2D::from_spacing(cfg.L, h);
            const Spectrum s = detail::solve(field, g, cfg);
            const double exact = box_levels(g, 1).front().continuum;
            err.push_back(std::abs(s.values.front() / exact - 1.0));
        }
        series["box_ground"] = detail::fit_json(hs, err);
    } else {
        const double zero_point = predicted_ground_level(field);
        std::vector<double> ground, comm, gauge;
        const bool ac = field.is_ac();
        const FieldConfig partner = field.kind == FieldKind::Plate ? FieldConfig::symmetric(cfg.sigma)
                                                                   : FieldConfig::plate(cfg.sigma);
        for (double h : hs) {
            const Grid2D g = Grid2D::from_spacing(cfg.L, h);
            Spectrum s = detail::solve(field, g, cfg);
            s.grid = g;
            const auto cl = cluster_levels(s, zero_point, cfg.resolved_window(), cfg.cluster_options());
            ground.push_back(std::abs(detail::lowest_mean(cl) - zero_point));
            comm.push_back(commutator_residual(field, g, detail::centered_gaussian(g)));
            if (ac) {
                Spectrum p = detail::solve(partner, g, cfg);
                p.grid = g;
                const auto cp = cluster_levels(p, zero_point, cfg.resolved_window(), cfg.cluster_options());
                gauge.push_back(std::abs(detail::lowest_mean(cl) - detail::lowest_mean(cp)));
            }
        }
        series["lowest_cluster_mean"] = detail::fit_json(hs, ground);
        series["commutator_residual"] = detail::fit_json(hs, comm);
        if (ac) series["gauge_gap"] = detail::fit_json(hs, gauge);
    }
    r["series"] = series;
    bool flagged = false;
    for (const auto& [name, s] : series.items()) flagged = flagged || !s["monotone"].get<bool>();
    r["flagged"] = flagged;
    detail::emit(cfg, "convergence", r);
    return result;
}

}  // namespace aclandau::cli
