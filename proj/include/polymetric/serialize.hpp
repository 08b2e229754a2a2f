#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "polymetric/extremal.hpp"
#include "polymetric/geometry.hpp"

namespace polymetric {

/// Numeric formatting used by every emitter: 17 significant digits in JSON,
/// fixed 12 decimals in CSV.  Identical configurations therefore produce
/// byte-identical output.
inline std::string json_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string csv_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    return buf;
}

inline std::string json_str(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string json_point(Point p) {
    return "[" + json_num(p.real()) + ", " + json_num(p.imag()) + "]";
}

inline std::string to_json(const ExtremalReport& r) {
    std::string out = "{";
    out += "\"name\": " + json_str(r.name);
    out += ", \"value\": " + json_num(r.value);
    out += ", \"location\": " + json_point(r.location);
    out += ", \"formula_ref\": " + json_str(r.formula_ref);
    out += ", \"oracle_residual\": " + json_num(r.oracle_residual);
    if (!r.note.empty()) out += ", \"note\": " + json_str(r.note);
    out += "}";
    return out;
}

inline std::string to_json(const std::vector<ExtremalReport>& reports) {
    std::string out = "[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) out += ",";
        out += "\n  " + to_json(reports[i]);
    }
    out += "\n]";
    return out;
}

inline std::string to_csv(const std::vector<ExtremalReport>& reports) {
    std::string out = "name,value,location_x,location_y,formula_ref,oracle_residual\n";
    for (const auto& r : reports) {
        out += r.name + "," + csv_num(r.value) + "," + csv_num(r.location.real()) + "," +
               csv_num(r.location.imag()) + "," + r.formula_ref + "," +
               csv_num(r.oracle_residual) + "\n";
    }
    return out;
}

inline std::string to_json(const PlanarGraph& g) {
    std::string out = "{\"nodes\": [";
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (i) out += ", ";
        out += json_point(g.nodes[i]);
    }
    out += "], \"edges\": [";
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        if (i) out += ", ";
        out += "[" + std::to_string(g.edges[i].first) + ", " +
               std::to_string(g.edges[i].second) + "]";
    }
    out += "]}";
    return out;
}

inline std::string to_json(const ConjectureScanResult& r) {
    std::string out = "{";
    out += "\"scan\": \"conjecture\"";
    out += ", \"k\": " + json_num(r.k);
    out += ", \"pairs\": " + std::to_string(r.pairs);
    out += ", \"seed\": " + std::to_string(r.seed);
    out += ", \"c_bound\": " + json_num(r.c_bound);
    out += ", \"max_ratio\": " + json_num(r.max_ratio);
    out += ", \"argmax_u\": " + json_point(r.argmax_u);
    out += ", \"argmax_v\": " + json_point(r.argmax_v);
    out += ", \"lower_violations\": " + std::to_string(r.lower_violations);
    out += ", \"upper_exceedances\": " + std::to_string(r.upper_exceedances);
    out += ", \"upper_bound_label\": " + json_str(r.upper_bound_label);
    out += "}";
    return out;
}

inline std::string to_json(const RectScanResult& r) {
    std::string out = "{";
    out += "\"scan\": \"rect-ratio\"";
    out += ", \"k\": " + json_num(r.k);
    out += ", \"c_value\": " + json_num(r.c_value);
    out += ", \"max_ratio\": " + json_num(r.max_ratio);
    out += ", \"argmax\": " + json_point(r.argmax);
    out += ", \"gr_max\": " + json_num(r.gr_max);
    out += std::string(", \"all_above_one\": ") + (r.all_above_one ? "true" : "false");
    out += std::string(", \"argmax_at_corner_points\": ") +
           (r.argmax_at_corner_points ? "true" : "false");
    out += std::string(", \"max_matches_c\": ") + (r.max_matches_c ? "true" : "false");
    out += "}";
    return out;
}

inline std::string to_json(const MonotonicityReport& r) {
    std::string out = "{";
    out += "\"z0\": " + json_point(r.z0);
    out += ", \"contact\": " + json_point(r.contact);
    out += ", \"base_ratio\": " + json_num(r.base_ratio);
    out += ", \"max_excess\": " + json_num(r.max_excess);
    out += ", \"samples\": " + std::to_string(r.samples);
    out += std::string(", \"ok\": ") + (r.ok ? "true" : "false");
    out += "}";
    return out;
}

}  // namespace polymetric
