#pragma once

// Run configuration for the command-line front end. Accepted inputs are a
// flat "key = value" file ('#' starts a comment) or a JSON object whose
// nested objects flatten to dotted keys. Both end up in RunConfig::set.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../errors.hpp"
#include "../fields.hpp"
#include "../grid.hpp"
#include "../levels.hpp"
#include "../solver.hpp"

namespace aclandau::cli {

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ValidationError("'" + key + "' expects a number, got '" + v + "'");
    }
    if (used != v.size() || !std::isfinite(d)) throw ValidationError("'" + key + "' expects a finite number, got '" + v + "'");
    return d;
}

inline long to_integer(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (d != std::floor(d) || std::abs(d) > 1e15) throw ValidationError("'" + key + "' expects an integer, got '" + v + "'");
    return static_cast<long>(d);
}

inline std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(key, item));
    }
    return out;
}

inline bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ValidationError("'" + key + "' expects true or false, got '" + v + "'");
}

inline std::string format_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace detail

inline FieldKind parse_kind(const std::string& name) {
    for (auto k : {FieldKind::Symmetric, FieldKind::Plate, FieldKind::GaugeTransformed, FieldKind::StandardLandau,
                   FieldKind::Free}) {
        if (to_string(k) == name) return k;
    }
    throw ValidationError("unknown kind '" + name + "'");
}

inline SolverMethod parse_method(const std::string& name) {
    for (auto m : {SolverMethod::Auto, SolverMethod::Dense, SolverMethod::Lanczos})
        if (to_string(m) == name) return m;
    throw ValidationError("unknown solver method '" + name + "'");
}

/// Builds the configuration of `kind`; gauge-transformed uses base + chi.
inline FieldConfig make_field(FieldKind kind, int sigma, FieldKind base = FieldKind::Symmetric,
                              const Polynomial2& chi = {}) {
    switch (kind) {
        case FieldKind::Symmetric: return FieldConfig::symmetric(sigma);
        case FieldKind::Plate: return FieldConfig::plate(sigma);
        case FieldKind::StandardLandau: return FieldConfig::standard_landau(sigma);
        case FieldKind::Free: return FieldConfig::free();
        case FieldKind::GaugeTransformed:
            if (base == FieldKind::GaugeTransformed) throw ValidationError("base kind cannot itself be gauge-transformed");
            return gauge_transform(make_field(base, sigma), GaugeFunction(chi));
        case FieldKind::Custom: break;
    }
    throw ValidationError("kind '" + to_string(kind) + "' cannot be built from a run configuration");
}

struct RunConfig {
    // field
    FieldKind kind = FieldKind::Symmetric;
    FieldKind base = FieldKind::Symmetric;     ///< base of gauge-transformed
    FieldKind compare = FieldKind::Plate;      ///< gauge-check target
    int sigma = -1;
    Polynomial2 chi;                           ///< chi.i.j = coefficient of x^i y^j
    // grid
    double L = 8.0;
    int n = 129;
    std::optional<double> h;                   ///< overrides n when set
    // solver
    int k = 40;
    double tol = 1e-8;
    SolverMethod method = SolverMethod::Auto;
    std::uint64_t seed = SolverOptions{}.seed;
    // analysis
    std::optional<double> window;              ///< absolute; default ground level + 2.5
    double bulk_margin = BulkFilter{}.margin;
    double bulk_threshold = BulkFilter{}.threshold;
    std::vector<double> levels;                ///< refinement spacings
    int nb = 6;
    // duality
    std::string side = "charge";
    double charge = 1.0, flux = 1.0, mass = 1.0, hbar = 1.0;
    double moment = 1.0, epsilon0 = 1.0, light_speed = 1.0, line_density = 1.0;
    std::optional<double> area;
    bool numeric = false;
    // output
    std::string output = ".";
    std::vector<std::string> formats{"json", "csv"};

    void set(const std::string& raw_key, const std::string& raw_value) {
        const std::string key = detail::trim(raw_key);
        const std::string v = detail::trim(raw_value);
        using namespace detail;
        if (key == "kind") kind = parse_kind(v);
        else if (key == "base") base = parse_kind(v);
        else if (key == "compare") compare = parse_kind(v);
        else if (key == "sigma") sigma = static_cast<int>(to_integer(key, v));
        else if (key == "L") L = to_double(key, v);
        else if (key == "n") n = static_cast<int>(to_integer(key, v));
        else if (key == "h") h = to_double(key, v);
        else if (key == "k") k = static_cast<int>(to_integer(key, v));
        else if (key == "tol") tol = to_double(key, v);
        else if (key == "method") method = parse_method(v);
        else if (key == "seed") seed = static_cast<std::uint64_t>(to_integer(key, v));
        else if (key == "window") window = to_double(key, v);
        else if (key == "bulk.margin") bulk_margin = to_double(key, v);
        else if (key == "bulk.threshold") bulk_threshold = to_double(key, v);
        else if (key == "levels") levels = to_list(key, v);
        else if (key == "nb") nb = static_cast<int>(to_integer(key, v));
        else if (key == "side") side = v;
        else if (key == "q") charge = to_double(key, v);
        else if (key == "flux") flux = to_double(key, v);
        else if (key == "S") area = to_double(key, v);
        else if (key == "mass") mass = to_double(key, v);
        else if (key == "hbar") hbar = to_double(key, v);
        else if (key == "mu") moment = to_double(key, v);
        else if (key == "eps0") epsilon0 = to_double(key, v);
        else if (key == "c") light_speed = to_double(key, v);
        else if (key == "lambda") line_density = to_double(key, v);
        else if (key == "numeric") numeric = to_bool(key, v);
        else if (key == "output") output = v;
        else if (key == "formats") {
            formats.clear();
            std::stringstream ss(v);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (item != "json" && item != "csv") throw ValidationError("unknown report format '" + item + "'");
                formats.push_back(item);
            }
        } else if (key.rfind("chi.", 0) == 0) {
            int i = 0, j = 0;
            char dot = 0;
            std::istringstream es(key.substr(4));
            if (!(es >> i >> dot >> j) || dot != '.' || !es.eof() || i < 0 || j < 0) {
                throw ValidationError("gauge coefficient key must look like chi.i.j, got '" + key + "'");
            }
            const double c = to_double(key, v);
            chi.add_term(i, j, c - chi.coefficient(i, j));
        } else {
            throw ValidationError("unknown configuration key '" + key + "'");
        }
    }

    Grid2D grid() const { return h ? Grid2D::from_spacing(L, *h) : Grid2D(L, n); }

    FieldConfig field() const { return make_field(kind, sigma, base, chi); }

    SolverOptions solver_options() const {
        SolverOptions o;
        o.tol = tol;
        o.method = method;
        o.seed = seed;
        return o;
    }

    ClusterOptions cluster_options() const {
        ClusterOptions o;
        o.bulk.margin = bulk_margin;
        o.bulk.threshold = bulk_threshold;
        return o;
    }

    double resolved_window() const {
        if (window) return *window;
        if (kind == FieldKind::Free) return std::numeric_limits<double>::infinity();
        return predicted_ground_level(field()) + 2.5;
    }

    bool wants(const std::string& format) const {
        return std::find(formats.begin(), formats.end(), format) != formats.end();
    }

    /// Range checks on every numeric field; throws ValidationError.
    void validate() const {
        if (sigma != 1 && sigma != -1) throw ValidationError("sigma must be +1 or -1");
        if (!(L > 0.0)) throw ValidationError("L must be positive");
        const Grid2D g = grid();
        if (k < 1 || static_cast<std::size_t>(k) > g.size()) throw ValidationError("k must lie in [1, n^2]");
        if (!(tol > 0.0)) throw ValidationError("tol must be positive");
        if (window && !(*window > 0.0)) throw ValidationError("window must be positive");
        if (!(bulk_margin >= 0.0)) throw ValidationError("bulk.margin must be non-negative");
        if (kind != FieldKind::Free && bulk_margin >= L) throw ValidationError("bulk.margin must lie in [0, L)");
        if (!(bulk_threshold > 0.0 && bulk_threshold <= 1.0)) throw ValidationError("bulk.threshold must lie in (0, 1]");
        for (double s : levels) {
            if (!(s > 0.0)) throw ValidationError("refinement spacings must be positive");
            Grid2D::from_spacing(L, s);
        }
        if (nb < 2) throw ValidationError("nb must be >= 2");
        if (side != "charge" && side != "dipole") throw ValidationError("side must be charge or dipole");
        if (!(mass > 0.0) || !(hbar > 0.0) || !(epsilon0 > 0.0) || !(light_speed > 0.0)) {
            throw ValidationError("mass, hbar, eps0 and c must be positive");
        }
        if (!chi.empty()) {
            const GaugeFunction g(chi);
            if (!g.is_harmonic()) throw NotHarmonic("gauge function chi is not harmonic");
        }
        if (kind == FieldKind::GaugeTransformed) field();
    }

    /// Fully resolved configuration, echoed into every report.
    nlohmann::json to_json() const {
        nlohmann::json j;
        j["kind"] = to_string(kind);
        if (kind == FieldKind::GaugeTransformed) j["base"] = to_string(base);
        j["compare"] = to_string(compare);
        j["sigma"] = sigma;
        nlohmann::json chi_terms = nlohmann::json::object();
        for (const auto& [e, c] : chi.terms()) chi_terms[std::to_string(e.first) + "." + std::to_string(e.second)] = c;
        j["chi"] = chi_terms;
        const Grid2D g = grid();
        j["L"] = L;
        j["n"] = g.points_per_axis();
        j["h"] = g.spacing();
        j["k"] = k;
        j["tol"] = tol;
        j["method"] = to_string(method);
        j["seed"] = seed;
        const double w = resolved_window();
        j["window"] = std::isfinite(w) ? nlohmann::json(w) : nlohmann::json("inf");
        j["bulk"] = {{"margin", bulk_margin}, {"threshold", bulk_threshold}};
        j["levels"] = levels;
        j["nb"] = nb;
        j["duality"] = {{"side", side}, {"q", charge}, {"flux", flux}, {"mass", mass}, {"hbar", hbar},
                        {"mu", moment}, {"eps0", epsilon0}, {"c", light_speed}, {"lambda", line_density},
                        {"numeric", numeric}};
        if (area) j["duality"]["S"] = *area;
        j["output"] = output;
        j["formats"] = formats;
        return j;
    }
};

namespace detail {

inline void flatten(const nlohmann::json& j, const std::string& prefix, RunConfig& cfg) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        const auto& v = it.value();
        if (v.is_object()) {
            flatten(v, key, cfg);
        } else if (v.is_array()) {
            std::string joined;
            for (const auto& e : v) {
                if (!joined.empty()) joined += ",";
                joined += e.is_string() ? e.get<std::string>() : (e.is_number() ? format_number(e.get<double>()) : e.dump());
            }
            cfg.set(key, joined);
        } else if (v.is_string()) {
            cfg.set(key, v.get<std::string>());
        } else if (v.is_boolean()) {
            cfg.set(key, v.get<bool>() ? "true" : "false");
        } else if (v.is_number()) {
            cfg.set(key, format_number(v.get<double>()));
        } else {
            throw ValidationError("unsupported JSON value for '" + key + "'");
        }
    }
}

}  // namespace detail

/// Applies configuration text (key = value lines or a JSON object) on top of cfg.
inline void apply_config_text(RunConfig& cfg, const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError(std::string("malformed JSON configuration: ") + e.what());
        }
        detail::flatten(j, "", cfg);
        return;
    }
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (detail::trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ValidationError("line " + std::to_string(number) + ": expected key = value");
        cfg.set(line.substr(0, eq), line.substr(eq + 1));
    }
}

inline RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    apply_config_text(cfg, text);
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open configuration file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace aclandau::cli
