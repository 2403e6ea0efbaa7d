#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adjsim/estimators.hpp"
#include "adjsim/graph_catalog.hpp"
#include "adjsim/sampler.hpp"
#include "adjsim/sem_oracle.hpp"

namespace adjsim {

inline constexpr std::string_view kQuartileConvention = "type7";

struct SimConfig {
    std::size_t n = 30;
    std::size_t reps = 1000;
    std::uint64_t master_seed = 0;
    /// Catalog ids to run; empty means the whole catalog.
    std::vector<int> graph_ids;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

void validate(const SimConfig& config);

/// Resolves a selection string: "all", a comma-separated id list ("1,5,28"),
/// or a single graph notation that must name a catalog entry.
std::vector<int> select_graphs(std::string_view selection);

struct RawRow {
    int graph_id;
    std::size_t rep;
    TechniqueId technique;
    std::optional<double> estimate;

    friend bool operator==(const RawRow&, const RawRow&) = default;
};

struct SummaryStats {
    double min;
    double q1;
    double median;
    double q3;
    double max;
    double mean;
    double sd;

    friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

/// Type-7 quantile of already sorted values, p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

/// Five-number summary (type-7 quartiles), mean and sample SD (divisor
/// count - 1; 0 for a single value). Throws std::invalid_argument when empty.
SummaryStats summarize(std::span<const double> values);

struct SimulationSummary {
    int graph_id;
    TechniqueId technique;
    std::size_t count;                  // defined estimates
    std::optional<SummaryStats> stats;  // absent when count == 0
    double true_effect;
    std::optional<double> population_estimand;
    std::optional<double> median_bias;

    friend bool operator==(const SimulationSummary&, const SimulationSummary&) = default;
};

struct SimulationResult {
    std::vector<RawRow> raw;  // sorted by (graph_id, rep, technique)
    std::vector<SimulationSummary> summaries;
};

/// Summaries per (graph_id, technique) over the defined estimates in `raw`.
std::vector<SimulationSummary> summarize_raw(const std::vector<RawRow>& raw);

SimulationResult run_simulation(const SimConfig& config, const std::vector<CatalogEntry>& entries,
                                const std::vector<StructuralModel>& models);

/// Runs over the built-in catalog with models from build_model.
SimulationResult run_simulation(const SimConfig& config);

struct OracleComparison {
    int graph_id;
    TechniqueId technique;
    std::optional<double> median;
    std::optional<double> estimand;
    std::optional<double> gap;  // median - estimand, when both are defined
};

std::vector<OracleComparison> compare_to_oracle(const std::vector<SimulationSummary>& summaries,
                                                const std::vector<EstimandRow>& estimands);

struct LemmaReport {
    std::size_t datasets = 0;
    std::size_t skipped = 0;  // degenerate draws
    double max_residual_x_gap = 0.0;
    double max_residual_xy_gap = 0.0;
};

/// Checks Multiple == ResidualX == ResidualXY on `datasets` draws cycling
/// through the catalog models. Gaps are relative to max(1, |Multiple|).
LemmaReport lemma_check(std::size_t datasets, std::size_t n, std::uint64_t master_seed);

}  // namespace adjsim
