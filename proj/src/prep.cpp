#include "pcadca/prep.hpp"

#include <algorithm>

#include "pcadca/error.hpp"

namespace pcadca {
namespace {
constexpr const char* kStage = "prep";
}

NormalisedColumn min_max_normalise(std::span<const double> column, std::string_view name) {
  const std::string label = name.empty() ? std::string("column") : "'" + std::string(name) + "'";
  if (column.size() < 2) {
    throw Error(ErrorKind::Data, kStage, label + " needs at least 2 values to normalise");
  }
  const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
  const double min = *lo;
  const double max = *hi;
  if (!(max > min)) {
    throw Error(ErrorKind::Data, kStage,
                "degenerate (constant) column " + label + "; exclude it");
  }
  NormalisedColumn out{{}, {min, max}};
  out.values.reserve(column.size());
  const double range = max - min;
  for (double v : column) out.values.push_back(std::clamp((v - min) / range, 0.0, 1.0));
  return out;
}

std::vector<double> invert(std::span<const double> column) {
  std::vector<double> out;
  out.reserve(column.size());
  for (double v : column) out.push_back(1.0 - v);
  return out;
}

std::vector<double> merge_columns(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::Data, kStage,
                "cannot merge columns of length " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) / 2.0;
  return out;
}

NormalisedTable normalise_table(const ResampledTable& table,
                                std::span<const std::string> exclude) {
  NormalisedTable out;
  out.seconds = table.seconds;
  std::vector<std::string> degenerate;
  for (std::size_t c = 0; c < table.columns.cols(); ++c) {
    const auto& name = table.columns.names[c];
    if (std::find(exclude.begin(), exclude.end(), name) != exclude.end()) continue;
    const auto& values = table.columns.data[c];
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (values.size() >= 2 && !(*hi > *lo)) {
      degenerate.push_back(name);
      continue;
    }
    auto norm = min_max_normalise(values, name);
    out.columns.add(name, std::move(norm.values));
    out.ranges.push_back(norm.original);
  }
  if (!degenerate.empty()) {
    std::string names;
    for (const auto& d : degenerate) names += (names.empty() ? "" : ", ") + d;
    throw Error(ErrorKind::Data, kStage, "degenerate (constant) columns: " + names);
  }
  return out;
}

NormalisedTable merge_in_table(NormalisedTable table, std::string_view a,
                               std::string_view b, std::string new_name) {
  const auto ia = table.columns.find(a);
  const auto ib = table.columns.find(b);
  if (!ia || !ib) {
    throw Error(ErrorKind::Data, kStage,
                "cannot merge unknown column '" + std::string(ia ? b : a) + "'");
  }
  if (*ia == *ib) throw Error(ErrorKind::Data, kStage, "cannot merge a column with itself");

  if (new_name != a && new_name != b && table.columns.contains(new_name)) {
    throw Error(ErrorKind::Data, kStage,
                "merged column name '" + new_name + "' collides with an existing column");
  }

  auto merged = merge_columns(table.columns.data[*ia], table.columns.data[*ib]);
  ValueRange range{std::min(table.ranges[*ia].min, table.ranges[*ib].min),
                   std::max(table.ranges[*ia].max, table.ranges[*ib].max)};
  auto renorm = min_max_normalise(merged, new_name);

  table.columns.names[*ia] = std::move(new_name);
  table.columns.data[*ia] = std::move(renorm.values);
  table.ranges[*ia] = range;
  table.columns.names.erase(table.columns.names.begin() + static_cast<std::ptrdiff_t>(*ib));
  table.columns.data.erase(table.columns.data.begin() + static_cast<std::ptrdiff_t>(*ib));
  table.ranges.erase(table.ranges.begin() + static_cast<std::ptrdiff_t>(*ib));
  return table;
}

}  // namespace pcadca
