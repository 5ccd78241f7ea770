#pragma once

// Deterministic report output: JSON with sorted keys and every float printed
// with 17 significant digits, CSV as (index, value) rows.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../errors.hpp"

namespace aclandau::cli {

inline std::string format_double(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

namespace detail {

inline void write_json(std::string& out, const nlohmann::json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + nlohmann::json(it.key()).dump() + ": ";
                write_json(out, it.value(), indent + 2);
            }
            out += "\n" + close + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                write_json(out, e, indent + 2);
            }
            out += "\n" + close + "]";
            return;
        }
        case nlohmann::json::value_t::number_float: out += format_double(j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

}  // namespace detail

inline std::string to_report_string(const nlohmann::json& j) {
    std::string out;
    detail::write_json(out, j, 0);
    out += "\n";
    return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

inline void write_json_report(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text(path, to_report_string(j));
}

inline void write_csv(const std::filesystem::path& path, const std::vector<double>& values) {
    std::string text = "index,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", values[i]);
        text += std::to_string(i) + "," + buf + "\n";
    }
    write_text(path, text);
}

}  // namespace aclandau::cli
