#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcadca/table.hpp"

namespace pcadca {

/// Samples as recorded: timestamps in milliseconds since record start.
struct RawTable {
  std::vector<double> timestamps;
  ColumnSet columns;
};

/// One row per whole second; `seconds` is always 0, 1, 2, ...
struct ResampledTable {
  std::vector<std::int64_t> seconds;
  ColumnSet columns;
};

struct AttributeStats {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double stdev = 0.0;  // sample (n - 1) estimator
};

enum class Label { Normal, Anomalous };

std::string_view to_string(Label label);
Label parse_label(std::string_view text);

/// Contiguous segments of a timeline of `length` seconds. Segment i spans
/// [start(i), end(i)); boundaries are the start indices of segments 1..n-1.
class SegmentMap {
 public:
  SegmentMap() = default;
  /// Validates that boundaries are strictly increasing and inside (0, length).
  SegmentMap(std::vector<std::size_t> boundaries, std::size_t length);

  std::size_t length() const { return length_; }
  std::size_t segment_count() const { return boundaries_.size() + 1; }
  const std::vector<std::size_t>& boundaries() const { return boundaries_; }
  const std::vector<Label>& labels() const { return labels_; }
  bool labelled() const { return !labels_.empty(); }

  std::size_t start(std::size_t segment) const;
  std::size_t end(std::size_t segment) const;

  friend SegmentMap apply_labels(SegmentMap map, std::vector<Label> pattern);

 private:
  std::vector<std::size_t> boundaries_;
  std::vector<Label> labels_;
  std::size_t length_ = 0;
};

/// Reads a header-first, comma-separated file. `time_column` is moved into
/// RawTable::timestamps; every other column is parsed as reals.
RawTable load_csv(const std::filesystem::path& path,
                  std::string_view time_column = "time");

/// Same as load_csv, from in-memory text. `source` names the input in errors.
RawTable parse_csv(std::string_view text, std::string_view time_column = "time",
                   std::string_view source = "<memory>");

/// Averages all samples with s*1000 <= t < (s+1)*1000 into second s. Empty
/// seconds are dropped and the remaining rows re-indexed from 0.
ResampledTable resample_average(const RawTable& raw);

AttributeStats describe(std::span<const double> values, std::string name = {});
AttributeStats describe(const ColumnSet& columns, std::string_view name);

/// Boundaries at the n_segments - 1 highest strict local maxima of `marker`,
/// greedily chosen (height descending, index ascending) so that chosen peaks
/// are at least marker.size() / (2 * n_segments) indices apart.
SegmentMap detect_segments(std::span<const double> marker,
                           std::size_t n_segments);

/// Attaches one label per segment.
SegmentMap apply_labels(SegmentMap map, std::vector<Label> pattern);

/// Rest, City, Highway, City, Highway, City, Rest.
std::vector<Label> driving_route_labels();

}  // namespace pcadca
