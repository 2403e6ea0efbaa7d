#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adjsim/simulation.hpp"

namespace adjsim {

enum class OutputFormat { csv, json };

OutputFormat parse_format(std::string_view s);
std::string_view extension(OutputFormat f);

struct RunMetadata {
    std::size_t n = 30;
    std::size_t reps = 1000;
    std::uint64_t master_seed = 0;
    std::string quartile_convention{kQuartileConvention};

    friend bool operator==(const RunMetadata&, const RunMetadata&) = default;
};

RunMetadata metadata_for(const SimConfig& config);

/// Carries the offending path in the message.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

// Raw estimates: graph_id,notation,technique,rep,estimate (empty when degenerate).
std::string raw_csv(const std::vector<RawRow>& raw);
std::vector<RawRow> parse_raw_csv(std::string_view text);

// Summary: graph_id,notation,w_class,xy_relation,technique,count,min,q1,median,
// q3,max,mean,sd,true_effect,population_estimand,median_bias.
std::string summary_csv(const std::vector<SimulationSummary>& summaries);
std::vector<SimulationSummary> parse_summary_csv(std::string_view text);

// JSON variants: {"metadata": {...}, "rows": [...]} with the CSV column names
// as keys and null for empty fields.
std::string raw_json(const std::vector<RawRow>& raw, const RunMetadata& meta);
std::string summary_json(const std::vector<SimulationSummary>& summaries, const RunMetadata& meta);
std::vector<RawRow> parse_raw_json(std::string_view text);
std::vector<SimulationSummary> parse_summary_json(std::string_view text);

std::string metadata_json(const RunMetadata& meta);
RunMetadata parse_metadata_json(std::string_view text);

struct ExportedFiles {
    std::filesystem::path raw;
    std::filesystem::path summary;
    std::filesystem::path metadata;  // CSV runs only; JSON files embed it
};

/// Writes raw.<ext> and summary.<ext> into `dir` (created if needed); CSV runs
/// also get metadata.json.
ExportedFiles export_summary(const SimulationResult& result, const RunMetadata& meta, OutputFormat format,
                             const std::filesystem::path& dir);

/// Reads a file written by export_summary, picking the parser by extension.
std::vector<RawRow> load_raw(const std::filesystem::path& path);
std::vector<SimulationSummary> load_summary(const std::filesystem::path& path);

}  // namespace adjsim
