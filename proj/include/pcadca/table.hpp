#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcadca {

/// Named, equal-length real columns stored column-major.
struct ColumnSet {
  std::vector<std::string> names;
  std::vector<std::vector<double>> data;

  std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
  std::size_t cols() const { return names.size(); }

  std::optional<std::size_t> find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  /// Throws a Data error tagged with `stage` if the column is absent.
  std::span<const double> column(std::string_view name,
                                 std::string_view stage = "table") const;

  void add(std::string name, std::vector<double> values);
  void remove(std::string_view name);
};

}  // namespace pcadca
