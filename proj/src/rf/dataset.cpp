#include "cicrdbo/rf/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cicrdbo/errors.hpp"
#include "cicrdbo/rng.hpp"

namespace cicrdbo::rf {

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Dataset out;
  out.feature_names = feature_names;
  out.categorical_mask = categorical_mask;
  out.labels.reserve(rows.size());
  out.values.reserve(rows.size() * cols());
  for (std::size_t r : rows) {
    const auto src = row(r);
    out.values.insert(out.values.end(), src.begin(), src.end());
    out.labels.push_back(labels[r]);
  }
  return out;
}

std::array<std::size_t, 2> Dataset::class_counts() const {
  std::array<std::size_t, 2> counts{0, 0};
  for (int y : labels) ++counts[y == 1 ? 1 : 0];
  return counts;
}

void Dataset::validate() const {
  if (categorical_mask.size() != feature_names.size()) {
    throw TrainingError("categorical mask length differs from feature count");
  }
  if (values.size() != rows() * cols()) throw TrainingError("value matrix has the wrong size");
  for (int y : labels) {
    if (y != 0 && y != 1) throw TrainingError("labels must be 0 or 1");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw TrainingError("dataset contains a non-finite value");
  }
}

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c) && c != '"'; };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string canonical_column(const std::string& name) {
  if (name == "Delicassen") return "Delicatessen";
  if (name == "Detergents Paper") return "Detergents_Paper";
  return name;
}

}  // namespace

Dataset parse_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("dataset is empty: no header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  // Byte-order mark from spreadsheet exports.
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);

  const auto header = split_line(line);
  std::map<std::string, std::size_t> column_of;
  for (std::size_t c = 0; c < header.size(); ++c) column_of[canonical_column(header[c])] = c;

  auto require = [&](const std::string& name) {
    auto it = column_of.find(name);
    if (it == column_of.end()) throw SchemaError("dataset is missing required column '" + name + "'");
    return it->second;
  };
  const std::size_t channel_col = require("Channel");
  std::vector<std::size_t> feature_cols;
  for (const auto& name : kWholesaleFeatures) feature_cols.push_back(require(name));

  Dataset data;
  data.feature_names = kWholesaleFeatures;
  data.categorical_mask.assign(kWholesaleFeatures.size(), false);
  data.categorical_mask[0] = true;  // Region

  std::size_t row_index = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    ++row_index;
    const auto cells = split_line(line);
    auto number = [&](std::size_t col) {
      const std::string& text = col < cells.size() ? cells[col] : std::string{};
      double v = 0.0;
      const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
      if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size() ||
          !std::isfinite(v)) {
        throw ParseError("non-numeric value '" + text + "' in column '" + header[col] +
                         "' at data row " + std::to_string(row_index));
      }
      return v;
    };
    const double channel = number(channel_col);
    if (channel != 1.0 && channel != 2.0) {
      throw ParseError("Channel must be 1 or 2 at data row " + std::to_string(row_index));
    }
    data.labels.push_back(channel == 2.0 ? 1 : 0);
    for (std::size_t col : feature_cols) data.values.push_back(number(col));
  }
  return data;
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset '" + path.string() + "'");
  return parse_dataset(in);
}

Dataset one_hot_encode(const Dataset& data) {
  std::vector<std::vector<double>> levels(data.cols());
  for (std::size_t c = 0; c < data.cols(); ++c) {
    if (!data.categorical_mask[c]) continue;
    std::set<double> distinct;
    for (std::size_t r = 0; r < data.rows(); ++r) distinct.insert(data.at(r, c));
    levels[c].assign(distinct.begin(), distinct.end());
  }

  Dataset out;
  out.labels = data.labels;
  for (std::size_t c = 0; c < data.cols(); ++c) {
    if (!data.categorical_mask[c]) {
      out.feature_names.push_back(data.feature_names[c]);
      continue;
    }
    for (double level : levels[c]) {
      std::ostringstream name;
      name << data.feature_names[c] << '=' << level;
      out.feature_names.push_back(name.str());
    }
  }
  out.categorical_mask.assign(out.feature_names.size(), false);
  out.values.reserve(data.rows() * out.cols());
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (std::size_t c = 0; c < data.cols(); ++c) {
      const double v = data.at(r, c);
      if (!data.categorical_mask[c]) {
        out.values.push_back(v);
        continue;
      }
      for (double level : levels[c]) out.values.push_back(v == level ? 1.0 : 0.0);
    }
  }
  return out;
}

Split stratified_split(const Dataset& data, double train_ratio, std::uint64_t seed) {
  if (!(train_ratio > 0.0 && train_ratio < 1.0)) {
    throw DomainError("train ratio must lie strictly between 0 and 1");
  }
  Rng rng(seed);
  Split split;
  for (int cls = 0; cls < 2; ++cls) {
    std::vector<std::size_t> members;
    for (std::size_t r = 0; r < data.rows(); ++r) {
      if (data.labels[r] == cls) members.push_back(r);
    }
    rng.shuffle(members);
    const auto n_train = static_cast<std::size_t>(
        std::lround(train_ratio * static_cast<double>(members.size())));
    split.train_rows.insert(split.train_rows.end(), members.begin(), members.begin() + n_train);
    split.test_rows.insert(split.test_rows.end(), members.begin() + n_train, members.end());
  }
  std::sort(split.train_rows.begin(), split.train_rows.end());
  std::sort(split.test_rows.begin(), split.test_rows.end());
  split.train = data.subset(split.train_rows);
  split.test = data.subset(split.test_rows);
  return split;
}

namespace {

std::vector<std::vector<std::size_t>> draw_folds(const Dataset& data, std::size_t k,
                                                 std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t offset = 0;
  for (int cls = 0; cls < 2; ++cls) {
    std::vector<std::size_t> members;
    for (std::size_t r = 0; r < data.rows(); ++r) {
      if (data.labels[r] == cls) members.push_back(r);
    }
    rng.shuffle(members);
    // Continue the round-robin across classes so fold sizes stay balanced.
    for (std::size_t i = 0; i < members.size(); ++i) folds[(offset + i) % k].push_back(members[i]);
    offset += members.size();
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

bool folds_usable(const Dataset& data, const std::vector<std::vector<std::size_t>>& folds) {
  const auto total = data.class_counts();
  for (const auto& fold : folds) {
    std::array<std::size_t, 2> held{0, 0};
    for (std::size_t r : fold) ++held[data.labels[r]];
    for (int c = 0; c < 2; ++c) {
      if (held[c] == 0 || held[c] == total[c]) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& data, std::size_t k,
                                                       std::uint64_t seed) {
  if (k < 2) throw DomainError("cross-validation needs at least 2 folds");
  if (k > data.rows()) throw DomainError("more folds than rows");
  auto folds = draw_folds(data, k, seed);
  if (folds_usable(data, folds)) return folds;
  folds = draw_folds(data, k, derive_seed(seed, 1));
  if (folds_usable(data, folds)) return folds;
  throw TrainingError("cannot form " + std::to_string(k) +
                      " folds that each contain both classes");
}

}  // namespace cicrdbo::rf
