#include "pcadca/table.hpp"

#include <algorithm>

#include "pcadca/error.hpp"

namespace pcadca {

std::optional<std::size_t> ColumnSet::find(std::string_view name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

std::span<const double> ColumnSet::column(std::string_view name,
                                          std::string_view stage) const {
  auto idx = find(name);
  if (!idx) {
    throw Error(ErrorKind::Data, std::string(stage),
                "unknown column '" + std::string(name) + "'");
  }
  return data[*idx];
}

void ColumnSet::add(std::string name, std::vector<double> values) {
  if (contains(name)) {
    throw Error(ErrorKind::Data, "table", "duplicate column '" + name + "'");
  }
  if (!data.empty() && values.size() != rows()) {
    throw Error(ErrorKind::Data, "table",
                "column '" + name + "' has " + std::to_string(values.size()) +
                    " rows, expected " + std::to_string(rows()));
  }
  names.push_back(std::move(name));
  data.push_back(std::move(values));
}

void ColumnSet::remove(std::string_view name) {
  auto idx = find(name);
  if (!idx) return;
  names.erase(names.begin() + static_cast<std::ptrdiff_t>(*idx));
  data.erase(data.begin() + static_cast<std::ptrdiff_t>(*idx));
}

}  // namespace pcadca
