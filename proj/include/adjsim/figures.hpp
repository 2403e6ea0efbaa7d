#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "adjsim/graph_catalog.hpp"
#include "adjsim/simulation.hpp"

namespace adjsim {

/// Techniques drawn in every panel, top to bottom.
inline constexpr std::array<TechniqueId, 4> kDisplayedTechniques{
    TechniqueId::SimpleRegression, TechniqueId::MultipleRegression, TechniqueId::ResidualY, TechniqueId::FittedX};

class MissingTechniqueError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PanelRow {
    TechniqueId technique;
    std::size_t count = 0;
    std::optional<SummaryStats> stats;
};

struct PanelSpec {
    int graph_id;
    std::string notation;
    GraphClass cls;
    double true_effect;
    std::array<PanelRow, 4> rows;
};

/// One figure of up to three panels in x_causes_y, y_causes_x, none order.
/// `w_class` is the figure's family: chain figures also hold the twisted
/// chain panel that replaces the excluded cycle.
struct FigureSpec {
    int figure;
    WClass w_class;
    std::string caption;
    std::vector<PanelSpec> panels;
};

/// Tukey box: whiskers reach the most extreme value within 1.5 IQR of the
/// box, clamped so they never retreat inside it.
struct BoxGlyph {
    double q1;
    double median;
    double q3;
    double whisker_low;
    double whisker_high;
    std::vector<double> outliers;  // ascending
};

BoxGlyph make_box_glyph(const SummaryStats& stats, std::span<const double> values);

/// Groups summaries into figures 1..11 (only figures with at least one panel).
/// Throws MissingTechniqueError if a panel lacks a displayed technique.
std::vector<FigureSpec> build_figure_specs(const std::vector<SimulationSummary>& summaries);

inline constexpr int kSvgWidth = 960;
inline constexpr int kSvgHeight = 720;

/// Standalone SVG 1.1 document. Each technique row is a <g class="row"> with a
/// <title> carrying the exact drawn values; each panel has one
/// <line class="truth"> at its true effect.
std::string render_figure(const FigureSpec& spec, const std::vector<RawRow>& raw);

}  // namespace adjsim
