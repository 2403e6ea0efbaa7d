#include "adjsim/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace adjsim {

namespace {

constexpr double kHeaderHeight = 54.0;
constexpr double kPanelHeight = (kSvgHeight - kHeaderHeight) / 3.0;
constexpr double kPlotLeft = 190.0;
constexpr double kPlotRight = 930.0;
constexpr double kRowsTop = 30.0;     // relative to panel top
constexpr double kRowsHeight = 140.0;
constexpr double kBoxHeight = 18.0;

// Each figure owns three consecutive catalog ids.
int panel_slot(int graph_id) {
    return (graph_id - 1) % 3;
}

WClass figure_family(int figure) {
    if (figure == 10) return WClass::ForwardChain;
    if (figure == 11) return WClass::BackwardChain;
    return static_cast<WClass>(figure - 1);
}

std::string xml_escape(std::string_view s) {
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

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string px(double v) {
    return fmt("%.2f", v);
}

double nice_step(double span) {
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 2.5, 5.0}) {
        if (raw <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

struct Scale {
    double lo;
    double hi;
    double operator()(double v) const { return kPlotLeft + (v - lo) / (hi - lo) * (kPlotRight - kPlotLeft); }
};

Scale panel_scale(const PanelSpec& panel) {
    double lo = panel.true_effect, hi = panel.true_effect;
    for (const auto& row : panel.rows) {
        if (!row.stats) continue;
        lo = std::min(lo, row.stats->min);
        hi = std::max(hi, row.stats->max);
    }
    if (hi - lo < 1e-9) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.04 * (hi - lo);
    return {lo - pad, hi + pad};
}

std::string row_title(TechniqueId t, const PanelRow& row, const BoxGlyph& g) {
    std::string s(display_name(t));
    s += ": count=" + std::to_string(row.count);
    s += " min=" + format_double(row.stats->min);
    s += " q1=" + format_double(g.q1);
    s += " median=" + format_double(g.median);
    s += " q3=" + format_double(g.q3);
    s += " max=" + format_double(row.stats->max);
    s += " whisker_low=" + format_double(g.whisker_low);
    s += " whisker_high=" + format_double(g.whisker_high);
    s += " outliers=" + std::to_string(g.outliers.size());
    return s;
}

void render_panel(std::string& out, const PanelSpec& panel, double top,
                  const std::map<std::pair<int, TechniqueId>, std::vector<double>>& values) {
    const Scale sx = panel_scale(panel);
    out += "<g class=\"panel\" id=\"panel-" + std::to_string(panel.graph_id) + "\">\n";
    char caption[160];
    std::snprintf(caption, sizeof caption, "%s  (true effect %.4f)", panel.notation.c_str(), panel.true_effect);
    out += "<text class=\"caption\" x=\"" + px(kPlotLeft) + "\" y=\"" + px(top + 18) + "\">" + xml_escape(caption) +
           "</text>\n";

    const double row_h = kRowsHeight / 4.0;
    for (std::size_t k = 0; k < panel.rows.size(); ++k) {
        const PanelRow& row = panel.rows[k];
        const double cy = top + kRowsTop + (static_cast<double>(k) + 0.5) * row_h;
        const std::string label(display_name(row.technique));
        out += "<text class=\"label\" x=\"" + px(kPlotLeft - 10) + "\" y=\"" + px(cy + 4) +
               "\" text-anchor=\"end\">" + xml_escape(label) + "</text>\n";
        if (!row.stats) {
            out += "<g class=\"row gap\" id=\"row-" + std::to_string(panel.graph_id) + "-" +
                   std::string(to_string(row.technique)) + "\">\n<title>" + xml_escape(label) +
                   ": no defined estimates</title>\n";
            out += "<text x=\"" + px(kPlotLeft + 8) + "\" y=\"" + px(cy + 4) +
                   "\" font-style=\"italic\" fill=\"#888\">undefined: no estimates</text>\n</g>\n";
            continue;
        }
        const auto it = values.find({panel.graph_id, row.technique});
        static const std::vector<double> empty;
        const BoxGlyph g = make_box_glyph(*row.stats, it == values.end() ? empty : it->second);

        out += "<g class=\"row\" id=\"row-" + std::to_string(panel.graph_id) + "-" +
               std::string(to_string(row.technique)) + "\">\n";
        out += "<title>" + xml_escape(row_title(row.technique, row, g)) + "</title>\n";
        const std::string y0 = px(cy - kBoxHeight / 2), y1 = px(cy + kBoxHeight / 2), yc = px(cy);
        const std::string cap0 = px(cy - kBoxHeight / 4), cap1 = px(cy + kBoxHeight / 4);
        out += "<line class=\"whisker\" x1=\"" + px(sx(g.whisker_low)) + "\" y1=\"" + yc + "\" x2=\"" + px(sx(g.q1)) +
               "\" y2=\"" + yc + "\" stroke=\"black\" stroke-dasharray=\"4,3\"/>\n";
        out += "<line class=\"whisker\" x1=\"" + px(sx(g.q3)) + "\" y1=\"" + yc + "\" x2=\"" +
               px(sx(g.whisker_high)) + "\" y2=\"" + yc + "\" stroke=\"black\" stroke-dasharray=\"4,3\"/>\n";
        for (double w : {g.whisker_low, g.whisker_high}) {
            out += "<line class=\"cap\" x1=\"" + px(sx(w)) + "\" y1=\"" + cap0 + "\" x2=\"" + px(sx(w)) + "\" y2=\"" +
                   cap1 + "\" stroke=\"black\"/>\n";
        }
        out += "<rect class=\"box\" x=\"" + px(sx(g.q1)) + "\" y=\"" + y0 + "\" width=\"" +
               px(sx(g.q3) - sx(g.q1)) + "\" height=\"" + px(kBoxHeight) +
               "\" fill=\"#d9d9d9\" stroke=\"black\"/>\n";
        out += "<line class=\"median\" x1=\"" + px(sx(g.median)) + "\" y1=\"" + y0 + "\" x2=\"" + px(sx(g.median)) +
               "\" y2=\"" + y1 + "\" stroke=\"black\" stroke-width=\"3\"/>\n";
        for (double o : g.outliers) {
            out += "<circle class=\"outlier\" cx=\"" + px(sx(o)) + "\" cy=\"" + yc +
                   "\" r=\"2.5\" fill=\"none\" stroke=\"black\"/>\n";
        }
        out += "</g>\n";
    }

    // Axis with ticks.
    const double axis_y = top + kRowsTop + kRowsHeight + 4;
    out += "<line class=\"axis\" x1=\"" + px(kPlotLeft) + "\" y1=\"" + px(axis_y) + "\" x2=\"" + px(kPlotRight) +
           "\" y2=\"" + px(axis_y) + "\" stroke=\"black\"/>\n";
    const double step = nice_step(sx.hi - sx.lo);
    const auto first = static_cast<long>(std::ceil(sx.lo / step));
    const auto last = static_cast<long>(std::floor(sx.hi / step));
    for (long i = first; i <= last; ++i) {
        const double tick = static_cast<double>(i) * step;
        out += "<line class=\"tick\" x1=\"" + px(sx(tick)) + "\" y1=\"" + px(axis_y) + "\" x2=\"" + px(sx(tick)) +
               "\" y2=\"" + px(axis_y + 5) + "\" stroke=\"black\"/>\n";
        out += "<text class=\"tick-label\" x=\"" + px(sx(tick)) + "\" y=\"" + px(axis_y + 17) +
               "\" text-anchor=\"middle\">" + fmt("%g", tick) + "</text>\n";
    }
    out += "<text class=\"axis-label\" x=\"" + px((kPlotLeft + kPlotRight) / 2) + "\" y=\"" + px(axis_y + 33) +
           "\" text-anchor=\"middle\">Estimate for causal effect of X on Y</text>\n";

    out += "<line class=\"truth\" x1=\"" + px(sx(panel.true_effect)) + "\" y1=\"" + px(top + kRowsTop - 4) +
           "\" x2=\"" + px(sx(panel.true_effect)) + "\" y2=\"" + px(axis_y) +
           "\" stroke=\"black\" stroke-width=\"2\"><title>true effect " + format_double(panel.true_effect) +
           "</title></line>\n";
    out += "</g>\n";
}

}  // namespace

BoxGlyph make_box_glyph(const SummaryStats& stats, std::span<const double> values) {
    BoxGlyph g{stats.q1, stats.median, stats.q3, stats.q1, stats.q3, {}};
    const double iqr = stats.q3 - stats.q1;
    const double lo_fence = stats.q1 - 1.5 * iqr;
    const double hi_fence = stats.q3 + 1.5 * iqr;
    for (double v : values) {
        if (v < lo_fence || v > hi_fence) {
            g.outliers.push_back(v);
            continue;
        }
        g.whisker_low = std::min(g.whisker_low, v);
        g.whisker_high = std::max(g.whisker_high, v);
    }
    std::sort(g.outliers.begin(), g.outliers.end());
    return g;
}

std::vector<FigureSpec> build_figure_specs(const std::vector<SimulationSummary>& summaries) {
    std::map<int, std::map<TechniqueId, const SimulationSummary*>> by_graph;
    for (const auto& s : summaries) by_graph[s.graph_id][s.technique] = &s;

    std::map<int, FigureSpec> figures;
    for (const auto& [id, techniques] : by_graph) {
        const CatalogEntry& e = catalog_entry(id);
        PanelSpec panel{id, e.notation, e.cls, true_effect(e.graph), {}};
        for (std::size_t k = 0; k < kDisplayedTechniques.size(); ++k) {
            const TechniqueId t = kDisplayedTechniques[k];
            const auto it = techniques.find(t);
            if (it == techniques.end())
                throw MissingTechniqueError("graph " + std::to_string(id) + " has no summary for " +
                                            std::string(display_name(t)));
            panel.rows[k] = {t, it->second->count, it->second->stats};
        }
        const int fig = figure_of(e.cls.w_class);
        auto [pos, inserted] = figures.try_emplace(fig);
        if (inserted) {
            pos->second.figure = fig;
            pos->second.w_class = figure_family(fig);
            pos->second.caption = std::string(figure_caption(fig));
        }
        pos->second.panels.push_back(std::move(panel));
    }

    std::vector<FigureSpec> out;
    for (auto& [fig, spec] : figures) {
        // Catalog ids already follow panel order within a figure.
        std::stable_sort(spec.panels.begin(), spec.panels.end(),
                         [](const PanelSpec& a, const PanelSpec& b) { return a.graph_id < b.graph_id; });
        out.push_back(std::move(spec));
    }
    return out;
}

std::string render_figure(const FigureSpec& spec, const std::vector<RawRow>& raw) {
    for (const auto& p : spec.panels) {
        for (std::size_t k = 0; k < kDisplayedTechniques.size(); ++k) {
            if (p.rows[k].technique != kDisplayedTechniques[k])
                throw MissingTechniqueError("panel for graph " + std::to_string(p.graph_id) +
                                            " does not list the displayed techniques in order");
        }
    }

    std::map<std::pair<int, TechniqueId>, std::vector<double>> values;
    for (const auto& p : spec.panels)
        for (TechniqueId t : kDisplayedTechniques) values[{p.graph_id, t}];
    for (const auto& r : raw) {
        if (!r.estimate) continue;
        const auto it = values.find({r.graph_id, r.technique});
        if (it != values.end()) it->second.push_back(*r.estimate);
    }

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(kSvgWidth) +
           "\" height=\"" + std::to_string(kSvgHeight) + "\" viewBox=\"0 0 " + std::to_string(kSvgWidth) + " " +
           std::to_string(kSvgHeight) + "\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"12\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(kSvgWidth) + "\" height=\"" +
           std::to_string(kSvgHeight) + "\" fill=\"white\"/>\n";
    out += "<text class=\"figure-caption\" x=\"" + px(kSvgWidth / 2.0) +
           "\" y=\"30\" text-anchor=\"middle\" font-size=\"16\">Figure " + std::to_string(spec.figure) + ": " +
           xml_escape(spec.caption) + "</text>\n";
    for (const auto& p : spec.panels) {
        const double top = kHeaderHeight + kPanelHeight * panel_slot(p.graph_id);
        render_panel(out, p, top, values);
    }
    out += "</svg>\n";
    return out;
}

}  // namespace adjsim
