#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cicrdbo/engine.hpp"

namespace cicrdbo {

// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

// Parses text produced by format_double (and ordinary decimal input).
// Throws ParseError on malformed text.
double parse_double(const std::string& text);

/// One line of the best/mean/std table.
struct StatsRow {
  std::string algorithm;
  std::string objective;
  std::size_t dim = 0;
  std::size_t pop = 0;
  std::size_t iters = 0;
  BatchStats stats;

  bool operator==(const StatsRow& o) const;
};

inline constexpr const char* kStatsHeader = "algorithm,objective,dim,pop,iters,runs,best,mean,std";
inline constexpr const char* kTraceHeader = "iteration,best_so_far";

void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows);
void write_stats_csv(const std::filesystem::path& path, const std::vector<StatsRow>& rows);
std::vector<StatsRow> read_stats_csv(std::istream& in);
std::vector<StatsRow> read_stats_csv(const std::filesystem::path& path);

void write_trace_csv(std::ostream& out, const RunRecord& record);
void write_trace_csv(const std::filesystem::path& path, const RunRecord& record);

// Sweep table: the stats columns prefixed by param,value.
void write_sweep_csv(const std::filesystem::path& path, const std::string& param,
                     const OptimizerConfig& base, const std::string& objective,
                     std::size_t dim, const std::vector<SweepRow>& rows);

nlohmann::json to_json(const RunRecord& record);
nlohmann::json to_json(const BatchStats& stats);

// Writes `text` to `path`, creating parent directories. Throws IoError naming the path.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace cicrdbo
