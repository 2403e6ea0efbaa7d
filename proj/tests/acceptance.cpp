// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance --only N   run criterion N (1-9)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "adjsim/cli.hpp"
#include "adjsim/figures.hpp"
#include "adjsim/report_io.hpp"
#include "adjsim/sampler.hpp"
#include "adjsim/sem_oracle.hpp"
#include "adjsim/simulation.hpp"

using namespace adjsim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

fs::path scratch_dir(const std::string& tag) {
    std::random_device rd;
    fs::path p = fs::temp_directory_path() / ("adjsim_accept_" + tag + "_" + std::to_string(rd()));
    fs::create_directories(p);
    return p;
}

std::size_t count_of(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

Outcome catalog_counts() {
    const auto& cat = catalog();
    std::set<std::string> positive;
    for (const auto& e : cat)
        if (e.graph.wx.sign == Sign::positive) positive.insert(e.notation);

    const Orientation os[] = {Orientation::toward_first, Orientation::toward_second, Orientation::absent};
    std::vector<std::string> rejected;
    for (auto a : os)
        for (auto b : os)
            for (auto c : os) {
                const CausalGraph g{{a, Sign::positive}, {b, Sign::positive}, {c, Sign::positive}};
                try {
                    validate(g);
                } catch (const GraphCycleError&) {
                    rejected.push_back(format_graph(g));
                }
            }
    const bool ok = cat.size() == 33 && positive.size() == 25 && rejected.size() == 2;
    return {ok, "entries=" + std::to_string(cat.size()) + " positive=" + std::to_string(positive.size()) +
                    " cyclic_rejected=" + std::to_string(rejected.size())};
}

Outcome lemma_suite() {
    const LemmaReport r = lemma_check(1650, 30, 20240101);
    const bool ok = r.datasets >= 1000 && r.max_residual_x_gap < 1e-9 && r.max_residual_xy_gap < 1e-9;
    return {ok, "datasets=" + std::to_string(r.datasets) + " max|M-RX|=" + fmt("%.2e", r.max_residual_x_gap) +
                    " max|M-RXY|=" + fmt("%.2e", r.max_residual_xy_gap)};
}

Outcome oracle_sampler_agreement() {
    double worst = 0.0;
    int worst_id = 0;
    for (const auto& e : catalog()) {
        const StructuralModel m = build_model(e.graph);
        const PopulationCovariance pop = population_covariance(m);
        const Dataset d = draw_dataset(m, 1'000'000, SeedSpec{0, static_cast<std::uint32_t>(e.id), 0});
        double mean[3] = {0, 0, 0};
        for (int v = 0; v < 3; ++v) {
            for (double x : d.column(v)) mean[v] += x;
            mean[v] /= static_cast<double>(d.n());
        }
        for (int a = 0; a < 3; ++a)
            for (int b = a; b < 3; ++b) {
                const auto& ca = d.column(a);
                const auto& cb = d.column(b);
                double s = 0.0;
                for (std::size_t i = 0; i < d.n(); ++i) s += (ca[i] - mean[a]) * (cb[i] - mean[b]);
                const double gap = std::abs(s / static_cast<double>(d.n() - 1) - pop.sigma[a][b]);
                if (gap > worst) {
                    worst = gap;
                    worst_id = e.id;
                }
            }
    }
    return {worst <= 0.01, "max entrywise gap " + fmt("%.4f", worst) + " (graph " + std::to_string(worst_id) + ")"};
}

Outcome monte_carlo_convergence() {
    SimConfig c;
    c.n = 30;
    c.reps = 1000;
    const SimulationResult r = run_simulation(c);
    const auto cmp = compare_to_oracle(r.summaries, estimand_table(catalog()));
    double worst_core = 0.0, worst_fitted = 0.0;
    std::vector<std::string> failures;
    for (const auto& row : cmp) {
        if (!row.gap) continue;
        const double g = std::abs(*row.gap);
        if (row.technique == TechniqueId::FittedX) {
            worst_fitted = std::max(worst_fitted, g);
            if (g > 0.10) failures.push_back(std::to_string(row.graph_id) + "/fitted_x=" + fmt("%.3f", g));
        } else if (row.technique == TechniqueId::SimpleRegression || row.technique == TechniqueId::MultipleRegression ||
                   row.technique == TechniqueId::ResidualY) {
            worst_core = std::max(worst_core, g);
            if (g > 0.05)
                failures.push_back(std::to_string(row.graph_id) + "/" + std::string(to_string(row.technique)) + "=" +
                                   fmt("%.3f", g));
        }
    }
    std::string detail = "max gap simple/multiple/residual_y " + fmt("%.4f", worst_core) + " (<=0.05), fitted_x " +
                         fmt("%.4f", worst_fitted) + " (<=0.10)";
    if (!failures.empty()) {
        detail += "; exceeded:";
        for (const auto& f : failures) detail += " " + f;
    }
    return {failures.empty(), detail};
}

Outcome true_value_anchor() {
    const double c = 1.0 / std::sqrt(3.0);
    const double te = true_effect(parse_graph("X->W->Y,X->Y"));
    bool zero = true;
    int y_causes_x = 0;
    for (const auto& e : catalog()) {
        if (e.cls.xy_relation != XYRelation::y_causes_x) continue;
        ++y_causes_x;
        zero = zero && true_effect(e.graph) == 0.0;
    }
    const bool ok = te == c * c + c && std::abs(te - 0.9107) < 5e-5 && zero && y_causes_x == 11;
    return {ok, "true_effect(X->W->Y,X->Y)=" + fmt("%.17g", te) + "; zero on " + std::to_string(y_causes_x) +
                    " Y->X graphs: " + (zero ? "yes" : "no")};
}

Outcome instrumental_claim() {
    const CatalogEntry* inst = nullptr;
    for (const auto& e : catalog())
        if (e.notation == "X<-W-Y,X->Y") inst = &e;
    const double te = true_effect(inst->graph);
    const auto est =
        population_estimand(population_covariance(build_model(inst->graph)), TechniqueId::FittedX);
    SimConfig c;
    c.graph_ids = {inst->id};
    const SimulationResult r = run_simulation(c);
    double median = NAN;
    for (const auto& s : r.summaries)
        if (s.technique == TechniqueId::FittedX && s.stats) median = s.stats->median;
    const bool ok = est && std::abs(*est - 1.0 / std::sqrt(3.0)) < 1e-15 && te == 1.0 / std::sqrt(3.0) &&
                    std::abs(median - te) <= 0.10;
    return {ok, "estimand=" + (est ? fmt("%.17g", *est) : std::string("undefined")) + " true=" + fmt("%.6f", te) +
                    " simulated median=" + fmt("%.4f", median)};
}

Outcome residual_y_bound() {
    double worst[kNumTechniques] = {};
    bool all_defined = true;
    int panels = 0;
    for (const auto& e : catalog()) {
        if (e.cls.w_class != WClass::Confounding) continue;
        ++panels;
        const PopulationCovariance cov = population_covariance(build_model(e.graph));
        const double te = true_effect(e.graph);
        for (TechniqueId t : kDisplayedTechniques) {
            const auto v = population_estimand(cov, t);
            if (!v) {
                all_defined = false;
                continue;
            }
            double& w = worst[static_cast<int>(t)];
            w = std::max(w, std::abs(*v - te));
        }
    }
    const double ry = worst[static_cast<int>(TechniqueId::ResidualY)];
    const double simple = worst[static_cast<int>(TechniqueId::SimpleRegression)];
    const double multiple = worst[static_cast<int>(TechniqueId::MultipleRegression)];
    const double fitted = worst[static_cast<int>(TechniqueId::FittedX)];
    const bool ok = panels == 3 && all_defined && std::abs(ry - 0.278) < 5e-4 && ry <= 0.30 && simple > ry &&
                    fitted > ry && multiple > 0.30;
    return {ok, "max|bias| residual_y=" + fmt("%.4f", ry) + " simple=" + fmt("%.4f", simple) +
                    " multiple=" + fmt("%.4f", multiple) + " fitted_x=" + fmt("%.4f", fitted)};
}

Outcome determinism() {
    const fs::path root = scratch_dir("det");
    auto produce = [&](unsigned threads, const std::string& tag) {
        SimConfig c;
        c.reps = 200;
        c.master_seed = 99;
        c.threads = threads;
        const SimulationResult r = run_simulation(c);
        const fs::path dir = root / tag;
        export_summary(r, metadata_for(c), OutputFormat::csv, dir);
        std::string svgs;
        for (const auto& f : build_figure_specs(r.summaries)) svgs += render_figure(f, r.raw);
        return std::vector<std::string>{read_text_file(dir / "raw.csv"), read_text_file(dir / "summary.csv"), svgs};
    };
    const auto a = produce(1, "a");
    const auto b = produce(1, "b");
    const auto p = produce(7, "p");
    fs::remove_all(root);
    const bool ok = a == b && a == p;
    return {ok, std::string("raw.csv, summary.csv, SVG identical across repeat and 1 vs 7 threads: ") +
                    (ok ? "yes" : "no")};
}

Outcome figure_inventory() {
    const fs::path root = scratch_dir("fig");
    std::ostringstream out, err;
    int code = cli_main({"simulate", "--reps", "100", "--out", root.string()}, out, err);
    if (code == 0) code = cli_main({"plot", "--in", root.string(), "--out", (root / "fig").string()}, out, err);
    if (code != 0) {
        fs::remove_all(root);
        return {false, "cli failed: " + err.str()};
    }
    std::size_t figures = 0, panels = 0, truth = 0, bad_rows = 0;
    for (int f = 1; f <= 11; ++f) {
        char name[32];
        std::snprintf(name, sizeof name, "figure_%02d.svg", f);
        const fs::path path = root / "fig" / name;
        if (!fs::exists(path)) continue;
        ++figures;
        const std::string svg = read_text_file(path);
        const std::size_t p = count_of(svg, "<g class=\"panel\"");
        panels += p;
        truth += count_of(svg, "<line class=\"truth\"");
        if (count_of(svg, "<g class=\"row") != 4 * p) ++bad_rows;
        for (TechniqueId t : kDisplayedTechniques)
            if (count_of(svg, "<title>" + std::string(display_name(t)) + ":") != p) ++bad_rows;
        for (TechniqueId t : {TechniqueId::ResidualX, TechniqueId::ResidualXY})
            if (count_of(svg, "<title>" + std::string(display_name(t)) + ":") != 0) ++bad_rows;
    }
    std::size_t stray = 0;
    for (const auto& entry : fs::directory_iterator(root / "fig")) stray += entry.path().extension() == ".svg";
    fs::remove_all(root);
    const bool ok = figures == 11 && stray == 11 && panels == 33 && truth == 33 && bad_rows == 0;
    return {ok, "figures=" + std::to_string(figures) + " panels=" + std::to_string(panels) +
                    " truth_lines=" + std::to_string(truth) + " panels_with_wrong_rows=" + std::to_string(bad_rows)};
}

struct Criterion {
    const char* name;
    std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {"catalog counts", catalog_counts},
        {"multiple = residual_x = residual_xy", lemma_suite},
        {"oracle-sampler covariance agreement", oracle_sampler_agreement},
        {"monte carlo convergence to oracle", monte_carlo_convergence},
        {"true-value anchor", true_value_anchor},
        {"instrumental fitted_x", instrumental_claim},
        {"residual_y bias bound", residual_y_bound},
        {"determinism", determinism},
        {"figure inventory", figure_inventory},
    };

    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--only N]\n");
            return 2;
        }
    }
    if (only < 0 || only > static_cast<int>(criteria.size())) {
        std::fprintf(stderr, "acceptance: no criterion %d\n", only);
        return 2;
    }

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<int>(i) + 1 != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %zu %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
