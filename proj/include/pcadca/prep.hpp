#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcadca/ingest.hpp"
#include "pcadca/table.hpp"

namespace pcadca {

struct ValueRange {
  double min = 0.0;
  double max = 0.0;
};

struct NormalisedColumn {
  std::vector<double> values;
  ValueRange original;
};

/// Columns mapped onto [0,1]; ranges[i] is the source range of columns[i].
struct NormalisedTable {
  std::vector<std::int64_t> seconds;
  ColumnSet columns;
  std::vector<ValueRange> ranges;

  std::size_t rows() const { return seconds.size(); }
};

/// (v - min) / (max - min). Throws on constant or too-short columns.
NormalisedColumn min_max_normalise(std::span<const double> column,
                                   std::string_view name = {});

std::vector<double> invert(std::span<const double> column);

/// Element-wise mean of two equal-length columns.
std::vector<double> merge_columns(std::span<const double> a, std::span<const double> b);

/// Normalises every column except those in `exclude` (which are dropped).
/// All constant columns are reported together in one error.
NormalisedTable normalise_table(const ResampledTable& table,
                                std::span<const std::string> exclude = {});

/// Replaces columns `a` and `b` with their re-normalised mean, named
/// `new_name`, at the position of `a`.
NormalisedTable merge_in_table(NormalisedTable table, std::string_view a,
                               std::string_view b, std::string new_name);

}  // namespace pcadca
