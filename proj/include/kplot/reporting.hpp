#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kplot/error.hpp"
#include "kplot/estimators.hpp"
#include "kplot/resampling.hpp"
#include "kplot/sample.hpp"
#include "kplot/version.hpp"

namespace kplot {

// -- multi-panel K-plot (SVG) ---------------------------------------------------

namespace detail {

inline std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

inline void check_same_grid(std::span<const KendallCurve> curves) {
    for (const auto& c : curves) {
        if (c.grid.size() != c.points.size()) throw std::invalid_argument("curve grid and points differ in length");
        if (c.grid != curves.front().grid) throw std::invalid_argument("K-plot panels must share one grid");
    }
}

inline constexpr const char* kPanelTitles[4] = {"K̂₀: X < x, Y < y", "K̂₁: X ≥ x, Y < y",
                                                "K̂₂: X < x, Y ≥ y", "K̂₃: X ≥ x, Y ≥ y"};
inline constexpr const char* kVerticalLabels[4] = {"K̂₀(t)", "K̂₁(t)", "K̂₂(t)",
                                                   "K̂₃(t)"};

inline std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// Renders four K-plot panels in a 2x2 layout (panel i at row i/2, column
/// i%2) as a standalone SVG document. Output depends only on the curves.
inline std::string render_kplot_svg(const std::array<KendallCurve, 4>& curves) {
    detail::check_same_grid(curves);
    for (std::size_t i = 0; i < 4; ++i) {
        if (index_of(curves[i].panel) != static_cast<int>(i)) throw std::invalid_argument("curves must be ordered by panel");
    }
    constexpr double cell = 320.0;
    constexpr double plot = 220.0;
    constexpr double left = 60.0;
    constexpr double top = 40.0;
    using detail::fixed3;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\""
           " font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < 4; ++i) {
        const double ox = cell * static_cast<double>(i % 2) + left;
        const double oy = cell * static_cast<double>(i / 2) + top;
        auto px = [&](double w) { return fixed3(ox + plot * w); };
        auto py = [&](double k) { return fixed3(oy + plot * (1.0 - k)); };

        svg << "<g class=\"panel\" id=\"panel-" << i << "\">\n";
        svg << "<text class=\"title\" x=\"" << px(0.5) << "\" y=\"" << fixed3(oy - 12.0) << "\" text-anchor=\"middle\">"
            << detail::xml_escape(detail::kPanelTitles[i]) << "</text>\n";
        svg << "<rect x=\"" << px(0.0) << "\" y=\"" << py(1.0) << "\" width=\"" << fixed3(plot) << "\" height=\""
            << fixed3(plot) << "\" fill=\"none\" stroke=\"black\"/>\n";
        svg << "<line class=\"diagonal\" x1=\"" << px(0.0) << "\" y1=\"" << py(0.0) << "\" x2=\"" << px(1.0)
            << "\" y2=\"" << py(1.0) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
        for (double tick : {0.0, 0.5, 1.0}) {
            svg << "<line x1=\"" << px(tick) << "\" y1=\"" << py(0.0) << "\" x2=\"" << px(tick) << "\" y2=\""
                << fixed3(oy + plot + 4.0) << "\" stroke=\"black\"/>\n";
            svg << "<text x=\"" << px(tick) << "\" y=\"" << fixed3(oy + plot + 16.0) << "\" text-anchor=\"middle\">"
                << (tick == 0.5 ? "0.5" : tick == 0.0 ? "0" : "1") << "</text>\n";
            svg << "<line x1=\"" << fixed3(ox - 4.0) << "\" y1=\"" << py(tick) << "\" x2=\"" << px(0.0) << "\" y2=\""
                << py(tick) << "\" stroke=\"black\"/>\n";
            svg << "<text x=\"" << fixed3(ox - 7.0) << "\" y=\"" << fixed3(oy + plot * (1.0 - tick) + 4.0)
                << "\" text-anchor=\"end\">" << (tick == 0.5 ? "0.5" : tick == 0.0 ? "0" : "1") << "</text>\n";
        }
        svg << "<text class=\"xlabel\" x=\"" << px(0.5) << "\" y=\"" << fixed3(oy + plot + 32.0)
            << "\" text-anchor=\"middle\">W(t) = t − t·log t</text>\n";
        svg << "<text class=\"ylabel\" x=\"" << fixed3(ox - 30.0) << "\" y=\"" << py(0.5)
            << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << fixed3(ox - 30.0) << ' ' << py(0.5) << ")\">"
            << detail::kVerticalLabels[i] << "</text>\n";

        // Step plot: K is a step function of t and w increases with t.
        svg << "<polyline class=\"curve\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
        const auto& pts = curves[i].points;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j > 0) svg << ' ' << px(pts[j].w) << ',' << py(pts[j - 1].k);
            svg << (j > 0 ? " " : "") << px(pts[j].w) << ',' << py(pts[j].k);
        }
        svg << "\"/>\n";
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

inline void render_kplot(const std::array<KendallCurve, 4>& curves, const std::string& path) {
    const auto text = render_kplot_svg(curves);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

// -- curves.csv -----------------------------------------------------------------

/// Columns panel,t,w,k; panel-major, then t ascending.
inline void write_curves_csv(std::ostream& out, std::span<const KendallCurve> curves) {
    detail::check_same_grid(curves);
    out << "panel,t,w,k\n";
    for (const auto& c : curves) {
        for (std::size_t i = 0; i < c.grid.size(); ++i) {
            out << index_of(c.panel) << ',' << format_double(c.grid[i]) << ',' << format_double(c.points[i].w) << ','
                << format_double(c.points[i].k) << '\n';
        }
    }
}

inline void export_curves_csv(std::span<const KendallCurve> curves, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_curves_csv(out, curves);
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline std::vector<KendallCurve> read_curves_csv(std::istream& in) {
    std::vector<KendallCurve> curves;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (row == 1 || detail::trim(line).empty()) continue;
        const auto fields = detail::split_fields(line);
        if (fields.size() != 4) throw CsvParseError(row, fields.size(), "expected 4 columns");
        const auto panel = panel_from_index(static_cast<int>(detail::parse_cell(fields[0], row, 1)));
        if (curves.empty() || curves.back().panel != panel) {
            curves.push_back({});
            curves.back().panel = panel;
        }
        curves.back().grid.push_back(detail::parse_cell(fields[1], row, 2));
        curves.back().points.push_back({detail::parse_cell(fields[2], row, 3), detail::parse_cell(fields[3], row, 4)});
    }
    return curves;
}

// -- report.json ------------------------------------------------------------------

inline constexpr int kReportSchemaVersion = 1;

struct SampleMetadata {
    std::size_t n = 0;
    TieReport ties;
    std::string source;
};

struct BootstrapSection {
    std::size_t replicates = 0;
    std::vector<double> levels;
    std::vector<IntervalEstimate> estimates;
};

struct AnalysisReport {
    int schema_version = kReportSchemaVersion;
    std::string software_version = kSoftwareVersion;
    SampleMetadata sample;
    DVector d;
    DependenceSigns signs;
    std::optional<BootstrapSection> bootstrap;
    std::uint64_t seed = 0;
};

/// report.json layout (schema_version 1):
///
///   schema_version, software_version, seed,
///   sample     {n, source, x_tie_count, y_tie_count}
///   d_vector   {auk0, auk1, auk2, auk3, i_auk, i_auk_std}
///   dependence {tolerance, components[4], aggregate}
///   bootstrap  null | {replicates, levels[], statistics[{name, point,
///              intervals[{level, lower, upper}]}]}
inline nlohmann::json to_json(const AnalysisReport& r) {
    using nlohmann::json;
    json j;
    j["schema_version"] = r.schema_version;
    j["software_version"] = r.software_version;
    j["seed"] = r.seed;
    j["sample"] = {{"n", r.sample.n},
                   {"source", r.sample.source},
                   {"x_tie_count", r.sample.ties.x_tie_count},
                   {"y_tie_count", r.sample.ties.y_tie_count}};
    j["d_vector"] = {{"auk0", r.d.auk[0]}, {"auk1", r.d.auk[1]}, {"auk2", r.d.auk[2]},
                     {"auk3", r.d.auk[3]}, {"i_auk", r.d.i_auk}, {"i_auk_std", r.d.i_auk_std}};
    json comps = json::array();
    for (auto c : r.signs.component) comps.push_back(std::string(to_string(c)));
    j["dependence"] = {{"tolerance", r.signs.tolerance},
                       {"components", comps},
                       {"aggregate", std::string(to_string(r.signs.aggregate))}};
    if (r.bootstrap) {
        json stats = json::array();
        for (const auto& e : r.bootstrap->estimates) {
            json ivs = json::array();
            for (const auto& iv : e.intervals) ivs.push_back({{"level", iv.level}, {"lower", iv.lower}, {"upper", iv.upper}});
            stats.push_back({{"name", std::string(to_string(e.statistic))}, {"point", e.point}, {"intervals", ivs}});
        }
        j["bootstrap"] = {{"replicates", r.bootstrap->replicates}, {"levels", r.bootstrap->levels}, {"statistics", stats}};
    } else {
        j["bootstrap"] = nullptr;
    }
    return j;
}

inline DependenceSign dependence_sign_from_string(const std::string& s) {
    if (s == "negative") return DependenceSign::negative;
    if (s == "positive") return DependenceSign::positive;
    if (s == "neutral") return DependenceSign::neutral;
    throw InputError("unknown dependence label '" + s + "'");
}

inline AnalysisReport report_from_json(const nlohmann::json& j) {
    AnalysisReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion) throw InputError("unsupported report schema version");
    r.software_version = j.at("software_version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    const auto& s = j.at("sample");
    r.sample.n = s.at("n").get<std::size_t>();
    r.sample.source = s.at("source").get<std::string>();
    r.sample.ties.x_tie_count = s.at("x_tie_count").get<std::size_t>();
    r.sample.ties.y_tie_count = s.at("y_tie_count").get<std::size_t>();
    const auto& d = j.at("d_vector");
    r.d.auk = {d.at("auk0").get<double>(), d.at("auk1").get<double>(), d.at("auk2").get<double>(),
               d.at("auk3").get<double>()};
    r.d.i_auk = d.at("i_auk").get<double>();
    r.d.i_auk_std = d.at("i_auk_std").get<double>();
    const auto& dep = j.at("dependence");
    r.signs.tolerance = dep.at("tolerance").get<double>();
    const auto& comps = dep.at("components");
    if (comps.size() != 4) throw InputError("dependence.components must have 4 entries");
    for (std::size_t i = 0; i < 4; ++i) r.signs.component[i] = dependence_sign_from_string(comps[i].get<std::string>());
    r.signs.aggregate = dependence_sign_from_string(dep.at("aggregate").get<std::string>());
    r.signs.signed_quantity = {0.5 - r.d.auk[0], r.d.auk[1] - 0.5, r.d.auk[2] - 0.5, 0.5 - r.d.auk[3]};
    const auto& b = j.at("bootstrap");
    if (!b.is_null()) {
        BootstrapSection sec;
        sec.replicates = b.at("replicates").get<std::size_t>();
        sec.levels = b.at("levels").get<std::vector<double>>();
        for (const auto& e : b.at("statistics")) {
            IntervalEstimate est;
            est.statistic = statistic_from_string(e.at("name").get<std::string>());
            est.point = e.at("point").get<double>();
            est.replicates = sec.replicates;
            for (const auto& iv : e.at("intervals")) {
                est.intervals.push_back(
                    {iv.at("level").get<double>(), iv.at("lower").get<double>(), iv.at("upper").get<double>()});
            }
            sec.estimates.push_back(std::move(est));
        }
        r.bootstrap = std::move(sec);
    }
    return r;
}

}  // namespace kplot
