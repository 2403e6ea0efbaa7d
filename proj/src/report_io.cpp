#include "adjsim/report_io.hpp"

#include <fstream>
#include <sstream>

#include "adjsim/csv.hpp"
#include "json.hpp"

namespace adjsim {

namespace {

using nlohmann::json;

constexpr std::string_view kRawHeader = "graph_id,notation,technique,rep,estimate";
constexpr std::string_view kSummaryHeader =
    "graph_id,notation,w_class,xy_relation,technique,count,min,q1,median,q3,max,mean,sd,true_effect,"
    "population_estimand,median_bias";

json optional_number(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<double> optional_from(const json& j, const char* key) {
    const json& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
}

json metadata_object(const RunMetadata& meta) {
    return {{"n", meta.n},
            {"reps", meta.reps},
            {"master_seed", meta.master_seed},
            {"quartile_convention", meta.quartile_convention}};
}

void expect_header(std::string_view got, std::string_view want) {
    if (got != want) throw std::invalid_argument("unexpected CSV header '" + std::string(got) + "'");
}

}  // namespace

OutputFormat parse_format(std::string_view s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw std::invalid_argument("format must be csv or json, got '" + std::string(s) + "'");
}

std::string_view extension(OutputFormat f) {
    return f == OutputFormat::csv ? ".csv" : ".json";
}

RunMetadata metadata_for(const SimConfig& config) {
    return {config.n, config.reps, config.master_seed, std::string(kQuartileConvention)};
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading " + path.string());
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("error writing " + path.string());
}

std::string raw_csv(const std::vector<RawRow>& raw) {
    std::string out(kRawHeader);
    out += '\n';
    for (const auto& r : raw) {
        out += std::to_string(r.graph_id);
        out += ',';
        out += csv::field(catalog_entry(r.graph_id).notation);
        out += ',';
        out += to_string(r.technique);
        out += ',';
        out += std::to_string(r.rep);
        out += ',';
        out += csv::number(r.estimate);
        out += '\n';
    }
    return out;
}

std::vector<RawRow> parse_raw_csv(std::string_view text) {
    const auto rows = csv::lines(text);
    if (rows.empty()) throw std::invalid_argument("raw estimates file is empty");
    expect_header(rows.front(), kRawHeader);
    std::vector<RawRow> out;
    out.reserve(rows.size() - 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = csv::split(rows[i]);
        if (f.size() != 5) throw std::invalid_argument("raw estimates row " + std::to_string(i) + " has wrong width");
        out.push_back({static_cast<int>(csv::parse_integer(f[0])), static_cast<std::size_t>(csv::parse_integer(f[3])),
                       parse_technique(f[2]), csv::parse_number(f[4])});
    }
    return out;
}

std::string summary_csv(const std::vector<SimulationSummary>& summaries) {
    std::ostringstream out;
    out << kSummaryHeader << '\n';
    for (const auto& s : summaries) {
        const CatalogEntry& e = catalog_entry(s.graph_id);
        auto stat = [&](double SummaryStats::*m) {
            return s.stats ? format_double((*s.stats).*m) : std::string();
        };
        out << s.graph_id << ',' << csv::field(e.notation) << ',' << to_string(e.cls.w_class) << ','
            << to_string(e.cls.xy_relation) << ',' << to_string(s.technique) << ',' << s.count << ','
            << stat(&SummaryStats::min) << ',' << stat(&SummaryStats::q1) << ',' << stat(&SummaryStats::median)
            << ',' << stat(&SummaryStats::q3) << ',' << stat(&SummaryStats::max) << ','
            << stat(&SummaryStats::mean) << ',' << stat(&SummaryStats::sd) << ',' << format_double(s.true_effect)
            << ',' << csv::number(s.population_estimand) << ',' << csv::number(s.median_bias) << '\n';
    }
    return out.str();
}

std::vector<SimulationSummary> parse_summary_csv(std::string_view text) {
    const auto rows = csv::lines(text);
    if (rows.empty()) throw std::invalid_argument("summary file is empty");
    expect_header(rows.front(), kSummaryHeader);
    std::vector<SimulationSummary> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = csv::split(rows[i]);
        if (f.size() != 16) throw std::invalid_argument("summary row " + std::to_string(i) + " has wrong width");
        SimulationSummary s{static_cast<int>(csv::parse_integer(f[0])),
                            parse_technique(f[4]),
                            static_cast<std::size_t>(csv::parse_integer(f[5])),
                            std::nullopt,
                            *csv::parse_number(f[13]),
                            csv::parse_number(f[14]),
                            csv::parse_number(f[15])};
        if (s.count > 0) {
            s.stats = SummaryStats{*csv::parse_number(f[6]),  *csv::parse_number(f[7]),  *csv::parse_number(f[8]),
                                   *csv::parse_number(f[9]),  *csv::parse_number(f[10]), *csv::parse_number(f[11]),
                                   *csv::parse_number(f[12])};
        }
        out.push_back(s);
    }
    return out;
}

std::string raw_json(const std::vector<RawRow>& raw, const RunMetadata& meta) {
    json rows = json::array();
    for (const auto& r : raw) {
        rows.push_back({{"graph_id", r.graph_id},
                        {"notation", catalog_entry(r.graph_id).notation},
                        {"technique", to_string(r.technique)},
                        {"rep", r.rep},
                        {"estimate", optional_number(r.estimate)}});
    }
    return json{{"metadata", metadata_object(meta)}, {"rows", std::move(rows)}}.dump(1) + "\n";
}

std::string summary_json(const std::vector<SimulationSummary>& summaries, const RunMetadata& meta) {
    json rows = json::array();
    for (const auto& s : summaries) {
        const CatalogEntry& e = catalog_entry(s.graph_id);
        auto stat = [&](double SummaryStats::*m) { return s.stats ? json((*s.stats).*m) : json(nullptr); };
        rows.push_back({{"graph_id", s.graph_id},
                        {"notation", e.notation},
                        {"w_class", to_string(e.cls.w_class)},
                        {"xy_relation", to_string(e.cls.xy_relation)},
                        {"technique", to_string(s.technique)},
                        {"count", s.count},
                        {"min", stat(&SummaryStats::min)},
                        {"q1", stat(&SummaryStats::q1)},
                        {"median", stat(&SummaryStats::median)},
                        {"q3", stat(&SummaryStats::q3)},
                        {"max", stat(&SummaryStats::max)},
                        {"mean", stat(&SummaryStats::mean)},
                        {"sd", stat(&SummaryStats::sd)},
                        {"true_effect", s.true_effect},
                        {"population_estimand", optional_number(s.population_estimand)},
                        {"median_bias", optional_number(s.median_bias)}});
    }
    return json{{"metadata", metadata_object(meta)}, {"rows", std::move(rows)}}.dump(1) + "\n";
}

std::vector<RawRow> parse_raw_json(std::string_view text) {
    const json doc = json::parse(text);
    std::vector<RawRow> out;
    for (const auto& r : doc.at("rows")) {
        out.push_back({r.at("graph_id").get<int>(), r.at("rep").get<std::size_t>(),
                       parse_technique(r.at("technique").get<std::string>()), optional_from(r, "estimate")});
    }
    return out;
}

std::vector<SimulationSummary> parse_summary_json(std::string_view text) {
    const json doc = json::parse(text);
    std::vector<SimulationSummary> out;
    for (const auto& r : doc.at("rows")) {
        SimulationSummary s{r.at("graph_id").get<int>(),
                            parse_technique(r.at("technique").get<std::string>()),
                            r.at("count").get<std::size_t>(),
                            std::nullopt,
                            r.at("true_effect").get<double>(),
                            optional_from(r, "population_estimand"),
                            optional_from(r, "median_bias")};
        if (s.count > 0) {
            s.stats = SummaryStats{r.at("min").get<double>(),    r.at("q1").get<double>(),
                                   r.at("median").get<double>(), r.at("q3").get<double>(),
                                   r.at("max").get<double>(),    r.at("mean").get<double>(),
                                   r.at("sd").get<double>()};
        }
        out.push_back(s);
    }
    return out;
}

std::string metadata_json(const RunMetadata& meta) {
    return metadata_object(meta).dump(2) + "\n";
}

RunMetadata parse_metadata_json(std::string_view text) {
    const json j = json::parse(text);
    const json& m = j.contains("metadata") ? j.at("metadata") : j;
    return {m.at("n").get<std::size_t>(), m.at("reps").get<std::size_t>(), m.at("master_seed").get<std::uint64_t>(),
            m.at("quartile_convention").get<std::string>()};
}

ExportedFiles export_summary(const SimulationResult& result, const RunMetadata& meta, OutputFormat format,
                             const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());

    ExportedFiles files;
    files.raw = dir / ("raw" + std::string(extension(format)));
    files.summary = dir / ("summary" + std::string(extension(format)));
    if (format == OutputFormat::csv) {
        files.metadata = dir / "metadata.json";
        write_text_file(files.raw, raw_csv(result.raw));
        write_text_file(files.summary, summary_csv(result.summaries));
        write_text_file(files.metadata, metadata_json(meta));
    } else {
        write_text_file(files.raw, raw_json(result.raw, meta));
        write_text_file(files.summary, summary_json(result.summaries, meta));
    }
    return files;
}

std::vector<RawRow> load_raw(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        return path.extension() == ".json" ? parse_raw_json(text) : parse_raw_csv(text);
    } catch (const std::exception& ex) {
        throw IoError(path.string() + ": " + ex.what());
    }
}

std::vector<SimulationSummary> load_summary(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        return path.extension() == ".json" ? parse_summary_json(text) : parse_summary_csv(text);
    } catch (const std::exception& ex) {
        throw IoError(path.string() + ": " + ex.what());
    }
}

}  // namespace adjsim
