#include "cicrdbo/export.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cicrdbo/errors.hpp"

namespace cicrdbo {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ParseError("not a number: '" + text + "'");
  }
  return v;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::size_t parse_count(const std::string& text) {
  const double v = parse_double(text);
  if (v < 0 || v != std::floor(v)) throw ParseError("not a count: '" + text + "'");
  return static_cast<std::size_t>(v);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_stats_fields(std::ostream& out, const StatsRow& r) {
  out << r.algorithm << ',' << r.objective << ',' << r.dim << ',' << r.pop << ',' << r.iters
      << ',' << r.stats.n_runs << ',' << format_double(r.stats.best) << ','
      << format_double(r.stats.mean) << ',' << format_double(r.stats.std);
}

}  // namespace

bool StatsRow::operator==(const StatsRow& o) const {
  auto same = [](double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); };
  return algorithm == o.algorithm && objective == o.objective && dim == o.dim && pop == o.pop &&
         iters == o.iters && stats.n_runs == o.stats.n_runs && same(stats.best, o.stats.best) &&
         same(stats.mean, o.stats.mean) && same(stats.std, o.stats.std);
}

void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows) {
  out << kStatsHeader << '\n';
  for (const auto& r : rows) {
    write_stats_fields(out, r);
    out << '\n';
  }
}

void write_stats_csv(const std::filesystem::path& path, const std::vector<StatsRow>& rows) {
  auto out = open_for_write(path);
  write_stats_csv(out, rows);
  finish(out, path);
}

std::vector<StatsRow> read_stats_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kStatsHeader) {
    throw SchemaError("stats CSV header must be '" + std::string(kStatsHeader) + "'");
  }
  std::vector<StatsRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 9) {
      throw ParseError("stats CSV line " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " fields, expected 9");
    }
    StatsRow r;
    r.algorithm = cells[0];
    r.objective = cells[1];
    r.dim = parse_count(cells[2]);
    r.pop = parse_count(cells[3]);
    r.iters = parse_count(cells[4]);
    r.stats.n_runs = parse_count(cells[5]);
    r.stats.best = parse_double(cells[6]);
    r.stats.mean = parse_double(cells[7]);
    r.stats.std = parse_double(cells[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<StatsRow> read_stats_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_stats_csv(in);
}

void write_trace_csv(std::ostream& out, const RunRecord& record) {
  out << kTraceHeader << '\n';
  for (std::size_t t = 0; t < record.trace.size(); ++t) {
    out << t << ',' << format_double(record.trace[t]) << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const RunRecord& record) {
  auto out = open_for_write(path);
  write_trace_csv(out, record);
  finish(out, path);
}

void write_sweep_csv(const std::filesystem::path& path, const std::string& param,
                     const OptimizerConfig& base, const std::string& objective,
                     std::size_t dim, const std::vector<SweepRow>& rows) {
  auto out = open_for_write(path);
  out << "param,value," << kStatsHeader << '\n';
  for (const auto& row : rows) {
    const OptimizerConfig c = with_parameter(base, param, row.value);
    StatsRow s{to_string(c.algorithm), objective, dim, c.pop_size, c.max_iters, row.stats};
    out << param << ',' << format_double(row.value) << ',';
    write_stats_fields(out, s);
    out << '\n';
  }
  finish(out, path);
}

nlohmann::json to_json(const RunRecord& record) {
  nlohmann::json trace = nlohmann::json::array();
  for (std::size_t t = 0; t < record.trace.size(); ++t) {
    trace.push_back({{"iteration", t}, {"best_so_far", record.trace[t]}});
  }
  return {{"fingerprint", record.fingerprint},
          {"algorithm", record.algorithm},
          {"objective", record.objective},
          {"dim", record.dim},
          {"seed", record.seed},
          {"trace", std::move(trace)},
          {"final_best_position", record.final_best_position},
          {"final_best_fitness", record.final_best_fitness},
          {"wall_time_seconds", record.wall_time_seconds}};
}

nlohmann::json to_json(const BatchStats& stats) {
  return {{"n_runs", stats.n_runs}, {"best", stats.best}, {"mean", stats.mean}, {"std", stats.std}};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto out = open_for_write(path);
  out << text;
  finish(out, path);
}

}  // namespace cicrdbo
