#include "adjsim/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

namespace adjsim {

void validate(const SimConfig& config) {
    if (config.n < 3) throw std::invalid_argument("n must be at least 3");
    if (config.reps < 1) throw std::invalid_argument("reps must be at least 1");
    for (int id : config.graph_ids) catalog_entry(id);
}

std::vector<int> select_graphs(std::string_view selection) {
    std::vector<int> ids;
    if (selection == "all") {
        for (const auto& e : catalog()) ids.push_back(e.id);
        return ids;
    }
    const bool id_list = !selection.empty() && std::all_of(selection.begin(), selection.end(), [](char c) {
        return (c >= '0' && c <= '9') || c == ',' || c == ' ';
    });
    if (!id_list) {
        const CausalGraph g = parse_graph(selection);
        for (const auto& e : catalog())
            if (e.graph == g) return {e.id};
        throw UnknownClassError("graph " + format_graph(g) + " is not in the catalog");
    }
    std::size_t pos = 0;
    while (pos <= selection.size()) {
        std::size_t end = selection.find(',', pos);
        if (end == std::string_view::npos) end = selection.size();
        std::string_view tok = selection.substr(pos, end - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        int id = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw std::invalid_argument("bad graph id '" + std::string(tok) + "'");
        catalog_entry(id);
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
        pos = end + 1;
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

SummaryStats summarize(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("cannot summarize an empty sample");
    std::vector<double> s(values.begin(), values.end());
    std::sort(s.begin(), s.end());

    SummaryStats st{};
    st.min = s.front();
    st.max = s.back();
    st.q1 = quantile_sorted(s, 0.25);
    st.median = quantile_sorted(s, 0.5);
    st.q3 = quantile_sorted(s, 0.75);

    double sum = 0.0;
    for (double v : s) sum += v;
    st.mean = sum / static_cast<double>(s.size());
    double ss = 0.0;
    for (double v : s) ss += (v - st.mean) * (v - st.mean);
    st.sd = s.size() > 1 ? std::sqrt(ss / static_cast<double>(s.size() - 1)) : 0.0;
    return st;
}

std::vector<SimulationSummary> summarize_raw(const std::vector<RawRow>& raw) {
    std::map<std::pair<int, int>, std::vector<double>> groups;
    for (const auto& r : raw) {
        auto& g = groups[{r.graph_id, static_cast<int>(r.technique)}];
        if (r.estimate) g.push_back(*r.estimate);
    }
    std::vector<SimulationSummary> out;
    out.reserve(groups.size());
    for (const auto& [key, values] : groups) {
        const CatalogEntry& e = catalog_entry(key.first);
        const auto t = static_cast<TechniqueId>(key.second);
        SimulationSummary s{e.id, t, values.size(), std::nullopt, true_effect(e.graph),
                            population_estimand(population_covariance(build_model(e.graph)), t), std::nullopt};
        if (!values.empty()) {
            s.stats = summarize(values);
            s.median_bias = s.stats->median - s.true_effect;
        }
        out.push_back(std::move(s));
    }
    return out;
}

SimulationResult run_simulation(const SimConfig& config, const std::vector<CatalogEntry>& entries,
                                const std::vector<StructuralModel>& models) {
    validate(config);
    if (entries.size() != models.size()) throw std::invalid_argument("one model is required per catalog entry");

    std::vector<std::size_t> selected;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const bool wanted = config.graph_ids.empty() ||
                            std::find(config.graph_ids.begin(), config.graph_ids.end(), entries[i].id) !=
                                config.graph_ids.end();
        if (wanted) selected.push_back(i);
    }
    std::sort(selected.begin(), selected.end(),
              [&](std::size_t a, std::size_t b) { return entries[a].id < entries[b].id; });

    // Each (graph, rep) task owns a disjoint slice of `raw`, already in canonical order.
    const std::size_t tasks = selected.size() * config.reps;
    std::vector<RawRow> raw(tasks * kNumTechniques);
    auto run_task = [&](std::size_t task) {
        const std::size_t gi = selected[task / config.reps];
        const std::size_t rep = task % config.reps;
        const int id = entries[gi].id;
        const SeedSpec seed{config.master_seed, static_cast<std::uint32_t>(id), rep};
        const EstimateSet est = estimate_all(draw_dataset(models[gi], config.n, seed));
        for (int t = 0; t < kNumTechniques; ++t) {
            const auto tech = kAllTechniques[static_cast<std::size_t>(t)];
            raw[task * kNumTechniques + static_cast<std::size_t>(t)] = {id, rep, tech, est[tech]};
        }
    };

    unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(tasks, 1)));
    if (threads <= 1) {
        for (std::size_t task = 0; task < tasks; ++task) run_task(task);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k) {
            pool.emplace_back([&] {
                for (std::size_t task = next++; task < tasks; task = next++) run_task(task);
            });
        }
    }

    SimulationResult result;
    result.raw = std::move(raw);
    result.summaries = summarize_raw(result.raw);
    return result;
}

SimulationResult run_simulation(const SimConfig& config) {
    std::vector<StructuralModel> models;
    for (const auto& e : catalog()) models.push_back(build_model(e.graph));
    return run_simulation(config, catalog(), models);
}

std::vector<OracleComparison> compare_to_oracle(const std::vector<SimulationSummary>& summaries,
                                                const std::vector<EstimandRow>& estimands) {
    std::map<std::pair<int, TechniqueId>, std::optional<double>> lookup;
    for (const auto& r : estimands) lookup[{r.graph_id, r.technique}] = r.estimand;

    std::vector<OracleComparison> out;
    out.reserve(summaries.size());
    for (const auto& s : summaries) {
        const auto it = lookup.find({s.graph_id, s.technique});
        if (it == lookup.end())
            throw std::invalid_argument("no population estimand for graph " + std::to_string(s.graph_id));
        OracleComparison c{s.graph_id, s.technique, std::nullopt, it->second, std::nullopt};
        if (s.stats) c.median = s.stats->median;
        if (c.median && c.estimand) c.gap = *c.median - *c.estimand;
        out.push_back(c);
    }
    return out;
}

LemmaReport lemma_check(std::size_t datasets, std::size_t n, std::uint64_t master_seed) {
    const auto& entries = catalog();
    std::vector<StructuralModel> models;
    for (const auto& e : entries) models.push_back(build_model(e.graph));

    LemmaReport report;
    for (std::size_t r = 0; r < datasets; ++r) {
        const std::size_t gi = r % entries.size();
        const SeedSpec seed{master_seed, static_cast<std::uint32_t>(entries[gi].id), r};
        const EstimateSet est = estimate_all(draw_dataset(models[gi], n, seed));
        const auto& m = est[TechniqueId::MultipleRegression];
        const auto& rx = est[TechniqueId::ResidualX];
        const auto& rxy = est[TechniqueId::ResidualXY];
        if (!m || !rx || !rxy) {
            ++report.skipped;
            continue;
        }
        const double scale = std::max(1.0, std::abs(*m));
        report.max_residual_x_gap = std::max(report.max_residual_x_gap, std::abs(*m - *rx) / scale);
        report.max_residual_xy_gap = std::max(report.max_residual_xy_gap, std::abs(*m - *rxy) / scale);
        ++report.datasets;
    }
    return report;
}

}  // namespace adjsim
