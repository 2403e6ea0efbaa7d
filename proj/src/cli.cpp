#include "adjsim/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "adjsim/figures.hpp"
#include "adjsim/graph_catalog.hpp"
#include "adjsim/report_io.hpp"
#include "adjsim/sem_oracle.hpp"
#include "adjsim/simulation.hpp"

namespace adjsim {

namespace fs = std::filesystem;

namespace {

constexpr double kLemmaTolerance = 1e-9;

struct Options {
    std::size_t n = 30;
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    std::string graph = "all";
    std::string out_dir;
    std::string format = "csv";
    unsigned threads = 0;
    long dump_rep = -1;
    std::string in_dir;
    std::string summary_path;
    std::string raw_path;
};

std::vector<CatalogEntry> selected_entries(const std::string& selection) {
    std::vector<CatalogEntry> out;
    for (int id : select_graphs(selection)) out.push_back(catalog_entry(id));
    return out;
}

int run_catalog(const Options& o, std::ostream& out) {
    const std::string doc = catalog_json() + "\n";
    if (o.out_dir.empty()) {
        out << doc;
        return 0;
    }
    fs::create_directories(o.out_dir);
    const fs::path path = fs::path(o.out_dir) / "catalog.json";
    write_text_file(path, doc);
    out << "wrote " << catalog().size() << " catalog entries to " << path.string() << '\n';
    return 0;
}

int run_oracle(const Options& o, std::ostream& out) {
    const OutputFormat fmt = parse_format(o.format);
    const auto rows = estimand_table(selected_entries(o.graph));
    const std::string doc = fmt == OutputFormat::csv ? estimand_table_csv(rows) : estimand_table_json(rows) + "\n";
    if (o.out_dir.empty()) {
        out << doc;
        return 0;
    }
    fs::create_directories(o.out_dir);
    const fs::path path = fs::path(o.out_dir) / ("estimands" + std::string(extension(fmt)));
    write_text_file(path, doc);
    out << "wrote " << rows.size() << " estimand rows to " << path.string() << '\n';
    return 0;
}

int run_simulate(const Options& o, std::ostream& out) {
    const OutputFormat fmt = parse_format(o.format);
    SimConfig config;
    config.n = o.n;
    config.reps = o.reps;
    config.master_seed = o.seed;
    config.graph_ids = select_graphs(o.graph);
    config.threads = o.threads;
    const fs::path dir = o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir);

    const SimulationResult result = run_simulation(config);
    const ExportedFiles files = export_summary(result, metadata_for(config), fmt, dir);
    if (o.dump_rep >= 0) {
        for (int id : config.graph_ids) {
            const SeedSpec seed{config.master_seed, static_cast<std::uint32_t>(id),
                                static_cast<std::uint64_t>(o.dump_rep)};
            const Dataset d = draw_dataset(build_model(catalog_entry(id).graph), config.n, seed);
            write_text_file(dir / ("dataset_g" + std::to_string(id) + "_r" + std::to_string(o.dump_rep) + ".csv"),
                            dataset_csv(d));
        }
    }
    out << "wrote " << result.raw.size() << " raw rows to " << files.raw.string() << " and "
        << result.summaries.size() << " summaries to " << files.summary.string() << '\n';
    return 0;
}

int run_lemma_check(const Options& o, std::ostream& out) {
    const LemmaReport r = lemma_check(o.reps, o.n, o.seed);
    char line[256];
    std::snprintf(line, sizeof line,
                  "datasets=%zu skipped=%zu max|multiple-residual_x|=%.3e max|multiple-residual_xy|=%.3e", r.datasets,
                  r.skipped, r.max_residual_x_gap, r.max_residual_xy_gap);
    out << line << '\n';
    const bool ok = r.datasets > 0 && r.max_residual_x_gap < kLemmaTolerance && r.max_residual_xy_gap < kLemmaTolerance;
    out << (ok ? "PASS" : "FAIL") << ": estimates agree within 1e-9\n";
    return ok ? 0 : 1;
}

int run_plot(const Options& o, std::ostream& out) {
    const OutputFormat fmt = parse_format(o.format);
    fs::path summary_path = o.summary_path, raw_path = o.raw_path;
    if (!o.in_dir.empty()) {
        if (summary_path.empty()) summary_path = fs::path(o.in_dir) / ("summary" + std::string(extension(fmt)));
        if (raw_path.empty()) raw_path = fs::path(o.in_dir) / ("raw" + std::string(extension(fmt)));
    }
    if (summary_path.empty() || raw_path.empty())
        throw std::invalid_argument("plot needs --summary and --raw, or --in <dir>");
    const auto summaries = load_summary(summary_path);
    const auto raw = load_raw(raw_path);
    const fs::path dir = o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir);
    fs::create_directories(dir);

    const auto figures = build_figure_specs(summaries);
    std::size_t panels = 0;
    for (const auto& f : figures) {
        char name[32];
        std::snprintf(name, sizeof name, "figure_%02d.svg", f.figure);
        write_text_file(dir / name, render_figure(f, raw));
        panels += f.panels.size();
    }
    out << "wrote " << figures.size() << " figures (" << panels << " panels) to " << dir.string() << '\n';
    return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adjustment techniques for three continuous variables: catalog, oracle and Monte Carlo", "adjsim"};
    app.require_subcommand(1);
    Options o;

    auto add_sim_flags = [&](CLI::App* cmd) {
        cmd->add_option("--n", o.n, "Observations per dataset")->check(CLI::Range(std::size_t{3}, std::numeric_limits<std::size_t>::max()));
        cmd->add_option("--reps", o.reps, "Replications per graph")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", o.seed, "Master seed");
    };

    auto* cat = app.add_subcommand("catalog", "Print or export the 33-entry graph catalog as JSON");
    cat->add_option("--out", o.out_dir, "Directory for catalog.json (stdout when omitted)");

    auto* oracle = app.add_subcommand("oracle", "Population estimands of every technique");
    oracle->add_option("--graph", o.graph, "all, id list, or notation");
    oracle->add_option("--out", o.out_dir, "Directory for estimands.<ext> (stdout when omitted)");
    oracle->add_option("--format", o.format, "csv or json");

    auto* sim = app.add_subcommand("simulate", "Run the Monte Carlo study");
    add_sim_flags(sim);
    sim->add_option("--graph", o.graph, "all, id list, or notation");
    sim->add_option("--out", o.out_dir, "Output directory");
    sim->add_option("--format", o.format, "csv or json");
    sim->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
    sim->add_option("--dump-rep", o.dump_rep, "Also write the dataset of this replication per graph");

    auto* lemma = app.add_subcommand("lemma-check", "Check Multiple = Residual X = Residual X and Y on random datasets");
    add_sim_flags(lemma);

    auto* plot = app.add_subcommand("plot", "Render SVG boxplot figures from a summary and raw file pair");
    plot->add_option("--summary", o.summary_path, "Summary file (csv or json)");
    plot->add_option("--raw", o.raw_path, "Raw estimates file (csv or json)");
    plot->add_option("--in", o.in_dir, "Directory holding summary.<ext> and raw.<ext>");
    plot->add_option("--format", o.format, "Format of files found via --in");
    plot->add_option("--out", o.out_dir, "Output directory for figure_NN.svg");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "adjsim: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*cat) return run_catalog(o, out);
        if (*oracle) return run_oracle(o, out);
        if (*sim) return run_simulate(o, out);
        if (*lemma) return run_lemma_check(o, out);
        if (*plot) return run_plot(o, out);
    } catch (const std::exception& e) {
        err << "adjsim: error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

int cli_main(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return cli_main(args, std::cout, std::cerr);
}

}  // namespace adjsim
