// aclandau: spectra and algebraic checks for the dipole Landau problem.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aclandau/cli/commands.hpp"

namespace {

using namespace aclandau;
using namespace aclandau::cli;

struct Overrides {
    std::string config_file;
    std::vector<std::string> sets;
    std::map<std::string, std::string> flags;
};

void add_common(CLI::App* app, Overrides& o, const std::vector<std::string>& keys) {
    app->set_help_flag("--help", "print this help message and exit");
    app->add_option("--config", o.config_file, "key = value or JSON configuration file")->check(CLI::ExistingFile);
    app->add_option("--set", o.sets, "override one configuration entry, key=value (repeatable)");
    for (const auto& key : keys) {
        app->add_option_function<std::string>("--" + key, [&o, key](const std::string& v) { o.flags[key] = v; },
                                              "configuration key '" + key + "'");
    }
}

RunConfig resolve(const Overrides& o) {
    RunConfig cfg = o.config_file.empty() ? RunConfig{} : load_config(o.config_file);
    for (const auto& [k, v] : o.flags) cfg.set(k == "out" ? "output" : k, v);
    for (const auto& s : o.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ValidationError("--set expects key=value, got '" + s + "'");
        cfg.set(s.substr(0, eq), s.substr(eq + 1));
    }
    return cfg;
}

void summarize(const std::string& name, const nlohmann::json& r) {
    std::cout << name;
    if (r.contains("status")) std::cout << " status=" << r["status"].get<std::string>();
    if (r.contains("clusters")) {
        std::cout << " means=";
        for (const auto& c : r["clusters"]) std::cout << format_double(c["mean"].get<double>()) << ' ';
    }
    if (r.contains("box_max_relative_error")) std::cout << " box_max_relative_error=" << format_double(r["box_max_relative_error"].get<double>());
    if (r.contains("max_residual")) std::cout << " max_residual=" << format_double(r["max_residual"].get<double>());
    if (r.contains("delta_e_charge")) {
        std::cout << " dE_charge=" << format_double(r["delta_e_charge"].get<double>())
                  << " dE_dipole=" << format_double(r["delta_e_dipole"].get<double>());
    }
    if (r.contains("flagged")) std::cout << " flagged=" << (r["flagged"].get<bool>() ? "true" : "false");
    std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Landau levels of a neutral dipole in an electric field"};
    app.require_subcommand(1);
    const std::vector<std::string> field_keys{"kind", "base", "sigma", "L", "n", "h", "k", "tol", "method",
                                              "window", "seed", "out", "formats"};

    Overrides spectrum_o, gauge_o, duality_o, susy_o, conv_o;
    auto* spectrum = app.add_subcommand("spectrum", "lowest eigenvalues, level clusters and residuals");
    add_common(spectrum, spectrum_o, field_keys);
    auto* gauge = app.add_subcommand("gauge-check", "compare two configurations related by a gauge function");
    auto gauge_keys = field_keys;
    gauge_keys.insert(gauge_keys.end(), {"compare", "levels"});
    add_common(gauge, gauge_o, gauge_keys);
    auto* duality = app.add_subcommand("duality", "charge <-> dipole parameter map and level separations");
    add_common(duality, duality_o, {"side", "q", "flux", "S", "mass", "hbar", "mu", "eps0", "c", "lambda", "numeric",
                                    "L", "n", "h", "k", "out", "formats"});
    auto* susy = app.add_subcommand("susy", "supersymmetry identities on a truncated Fock space");
    add_common(susy, susy_o, {"nb", "out", "formats"});
    auto* conv = app.add_subcommand("convergence", "observed orders under grid refinement");
    add_common(conv, conv_o, {"kind", "sigma", "L", "levels", "k", "tol", "method", "window", "out", "formats"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_validation;
    }

    try {
        CommandResult res;
        std::string name;
        if (*spectrum) {
            name = "spectrum";
            res = cmd_spectrum(resolve(spectrum_o));
        } else if (*gauge) {
            name = "gauge-check";
            res = cmd_gauge_check(resolve(gauge_o));
        } else if (*duality) {
            name = "duality";
            res = cmd_duality(resolve(duality_o));
        } else if (*susy) {
            name = "susy";
            res = cmd_susy(resolve(susy_o));
        } else {
            name = "convergence";
            res = cmd_convergence(resolve(conv_o));
        }
        summarize(name, res.report);
        return res.exit_code;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return exit_solver;
    } catch (const ClusteringAmbiguous& e) {
        std::cerr << "analysis ambiguity: " << e.what() << '\n';
        return exit_ambiguous;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
