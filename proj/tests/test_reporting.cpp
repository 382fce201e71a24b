#include <gtest/gtest.h>

#include <regex>
#include <sstream>
#include <stack>

#include "test_support.hpp"

using namespace kplot;

namespace {

// Minimal XML well-formedness check: balanced tags, quoted attributes, a
// single root element. Enough for the generator's restricted output.
bool well_formed(const std::string& doc, std::string* why) {
    std::stack<std::string> open;
    std::size_t roots = 0;
    std::size_t i = 0;
    while ((i = doc.find('<', i)) != std::string::npos) {
        const auto end = doc.find('>', i);
        if (end == std::string::npos) return *why = "unterminated tag", false;
        std::string tag = doc.substr(i + 1, end - i - 1);
        i = end + 1;
        if (tag.starts_with("?") || tag.starts_with("!")) continue;
        if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return *why = "unbalanced quotes in <" + tag + ">", false;
        if (tag.starts_with("/")) {
            const auto name = tag.substr(1);
            if (open.empty() || open.top() != name) return *why = "mismatched </" + name + ">", false;
            open.pop();
            continue;
        }
        const bool self_closing = tag.ends_with("/");
        const auto name = tag.substr(0, tag.find_first_of(" \t\n/"));
        if (open.empty()) ++roots;
        if (!self_closing) open.push(name);
    }
    if (!open.empty()) return *why = "unclosed <" + open.top() + ">", false;
    if (roots != 1) return *why = "expected one root element", false;
    return true;
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST(RenderKplot, WellFormedWithFourPanels) {
    const auto curves = kendall_curves(QuadrantTable(sample_morgenstern(5.0, 500, 1)));
    const auto svg = render_kplot_svg(curves);
    std::string why;
    EXPECT_TRUE(well_formed(svg, &why)) << why;
    EXPECT_EQ(count_of(svg, "<g class=\"panel\""), 4u);
    EXPECT_EQ(count_of(svg, "<polyline"), 4u);
    EXPECT_NE(svg.find("W(t) = t − t·log t"), std::string::npos);
    EXPECT_EQ(svg, render_kplot_svg(curves));
}

TEST(RenderKplot, MismatchedGridsRejected) {
    const QuadrantTable t(sample_bvn(0.2, 100, 1));
    auto curves = kendall_curves(t);
    curves[2] = kendall_curve(t, Panel::upper_left, 51);
    EXPECT_THROW(render_kplot_svg(curves), std::invalid_argument);
}

TEST(RenderKplot, CoordinatesStayInsidePanels) {
    const auto svg = render_kplot_svg(kendall_curves(QuadrantTable(sample_circle(2000, 2))));
    const std::regex pts("points=\"([^\"]*)\"");
    std::size_t polylines = 0;
    for (std::sregex_iterator it(svg.begin(), svg.end(), pts), end; it != end; ++it) {
        ++polylines;
        std::istringstream in((*it)[1].str());
        std::string xy;
        while (in >> xy) {
            const double x = std::stod(xy.substr(0, xy.find(',')));
            const double y = std::stod(xy.substr(xy.find(',') + 1));
            EXPECT_GE(x, 0.0);
            EXPECT_LE(x, 640.0);
            EXPECT_GE(y, 0.0);
            EXPECT_LE(y, 640.0);
        }
    }
    EXPECT_EQ(polylines, 4u);
}

TEST(KplotCurves, ComonotoneBelowDiagonal) {
    const auto c = kendall_curve(sample_bvn(1.0, 2000, 3), Panel::lower_left);
    for (const auto& p : c.points) EXPECT_LE(p.k, p.w + 1e-12);
}

TEST(KplotCurves, IndependenceNearDiagonal) {
    for (const auto& c : kendall_curves(QuadrantTable(sample_fgm(0.0, 5000, 4)))) {
        for (const auto& p : c.points) EXPECT_NEAR(p.k, p.w, 0.03);
    }
}

TEST(CurvesCsv, RowCountAndRoundTrip) {
    const auto curves = kendall_curves(QuadrantTable(sample_bvt5(300, 5)));
    std::ostringstream out;
    write_curves_csv(out, curves);
    const auto text = out.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 805);
    EXPECT_EQ(text.substr(0, 13), "panel,t,w,k\n0");

    std::istringstream in(text);
    const auto back = read_curves_csv(in);
    ASSERT_EQ(back.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(back[i].panel, curves[i].panel);
        EXPECT_EQ(back[i].grid, curves[i].grid);
        for (std::size_t k = 0; k < curves[i].points.size(); ++k) {
            EXPECT_EQ(back[i].points[k].w, curves[i].points[k].w);
            EXPECT_EQ(back[i].points[k].k, curves[i].points[k].k);
        }
    }
    std::ostringstream again;
    write_curves_csv(again, back);
    EXPECT_EQ(again.str(), text);
}

TEST(Report, JsonRoundTrip) {
    const auto s = sample_bvn(0.35, 400, 6);
    AnalysisReport r;
    r.seed = 123;
    r.sample = {s.size(), s.tie_report(), "in.csv"};
    r.d = d_vector(s);
    r.signs = classify_dependence(r.d, default_neutrality_tolerance(s.size()));
    const std::vector<double> levels{0.9, 0.95};
    r.bootstrap = BootstrapSection{150, levels, bootstrap_all(s, 150, levels, 1)};

    const auto text = to_json(r).dump(2);
    const auto back = report_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(back.seed, 123u);
    EXPECT_EQ(back.sample.n, 400u);
    EXPECT_EQ(back.sample.source, "in.csv");
    for (int i = 0; i < 4; ++i) EXPECT_EQ(back.d.auk[i], r.d.auk[i]);
    EXPECT_EQ(back.d.i_auk, r.d.i_auk);
    EXPECT_EQ(back.signs.aggregate, r.signs.aggregate);
    ASSERT_TRUE(back.bootstrap.has_value());
    ASSERT_EQ(back.bootstrap->estimates.size(), 6u);
    EXPECT_EQ(back.bootstrap->estimates[4].intervals[1].upper, r.bootstrap->estimates[4].intervals[1].upper);
    EXPECT_EQ(to_json(back).dump(2), text);
}

TEST(Report, SchemaKeys) {
    AnalysisReport r;
    r.sample.n = 2;
    const auto j = to_json(r);
    for (const char* key : {"schema_version", "software_version", "seed", "sample", "d_vector", "dependence", "bootstrap"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_TRUE(j["bootstrap"].is_null());
    auto bad = j;
    bad["schema_version"] = 99;
    EXPECT_THROW(report_from_json(bad), InputError);
}
