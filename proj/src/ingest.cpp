#include "pcadca/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "pcadca/error.hpp"

namespace pcadca {
namespace {

constexpr const char* kStage = "ingest";

[[noreturn]] void fail(const std::string& message) {
  throw Error(ErrorKind::Data, kStage, message);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(pos)));
      break;
    }
    out.push_back(trim(line.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

bool parse_real(std::string_view cell, double& out) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return false;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size() && std::isfinite(out);
}

}  // namespace

std::string_view to_string(Label label) {
  return label == Label::Anomalous ? "anomalous" : "normal";
}

Label parse_label(std::string_view text) {
  if (text == "anomalous" || text == "a" || text == "1") return Label::Anomalous;
  if (text == "normal" || text == "n" || text == "0") return Label::Normal;
  throw Error(ErrorKind::Config, kStage,
              "unknown label '" + std::string(text) + "' (expected normal|anomalous)");
}

SegmentMap::SegmentMap(std::vector<std::size_t> boundaries, std::size_t length)
    : boundaries_(std::move(boundaries)), length_(length) {
  if (length_ == 0) fail("segment map over an empty timeline");
  for (std::size_t i = 0; i < boundaries_.size(); ++i) {
    const auto b = boundaries_[i];
    if (b == 0 || b >= length_) {
      fail("segment boundary " + std::to_string(b) + " outside timeline (0, " +
           std::to_string(length_) + ")");
    }
    if (i > 0 && b <= boundaries_[i - 1]) {
      fail("segment boundaries must be strictly increasing");
    }
  }
}

std::size_t SegmentMap::start(std::size_t segment) const {
  return segment == 0 ? 0 : boundaries_.at(segment - 1);
}

std::size_t SegmentMap::end(std::size_t segment) const {
  return segment == boundaries_.size() ? length_ : boundaries_.at(segment);
}

RawTable load_csv(const std::filesystem::path& path, std::string_view time_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), time_column, path.string());
}

RawTable parse_csv(std::string_view text, std::string_view time_column,
                   std::string_view source) {
  const std::string where(source);
  std::size_t line_no = 0;
  std::size_t pos = 0;

  auto next_line = [&](std::string_view& line) {
    while (pos < text.size()) {
      auto nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      line = text.substr(pos, nl - pos);
      pos = nl + 1;
      ++line_no;
      if (!trim(line).empty()) return true;
    }
    return false;
  };

  std::string_view line;
  if (!next_line(line)) fail(where + ": empty file (no header)");
  if (line.size() >= 3 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);

  const auto header = split_fields(line);
  std::unordered_set<std::string_view> seen;
  std::ptrdiff_t time_idx = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i].empty()) fail(where + ": empty column name in header");
    if (!seen.insert(header[i]).second) {
      fail(where + ": duplicate column name '" + std::string(header[i]) + "'");
    }
    if (header[i] == time_column) time_idx = static_cast<std::ptrdiff_t>(i);
  }
  if (time_idx < 0) {
    fail(where + ": time column '" + std::string(time_column) + "' not in header");
  }
  if (header.size() < 2) fail(where + ": no attribute columns besides time");

  std::vector<std::vector<double>> cols(header.size());
  while (next_line(line)) {
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      fail(where + ":" + std::to_string(line_no) + ": expected " +
           std::to_string(header.size()) + " fields, found " +
           std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      double v = 0.0;
      if (!parse_real(fields[i], v)) {
        fail(where + ":" + std::to_string(line_no) + ": non-numeric value '" +
             std::string(fields[i]) + "' in column '" + std::string(header[i]) + "'");
      }
      cols[i].push_back(v);
    }
  }
  if (cols.front().empty()) fail(where + ": no data rows");

  RawTable raw;
  raw.timestamps = std::move(cols[static_cast<std::size_t>(time_idx)]);
  for (std::size_t i = 1; i < raw.timestamps.size(); ++i) {
    if (raw.timestamps[i] < raw.timestamps[i - 1]) {
      fail(where + ": timestamps decrease at data row " + std::to_string(i + 1));
    }
  }
  if (raw.timestamps.front() < 0.0) fail(where + ": negative timestamp");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (static_cast<std::ptrdiff_t>(i) == time_idx) continue;
    raw.columns.add(std::string(header[i]), std::move(cols[i]));
  }
  return raw;
}

ResampledTable resample_average(const RawTable& raw) {
  const std::size_t n = raw.timestamps.size();
  if (n == 0) fail("cannot resample an empty table");

  ResampledTable out;
  out.columns.names = raw.columns.names;
  out.columns.data.resize(raw.columns.cols());

  std::size_t i = 0;
  std::int64_t next_index = 0;
  while (i < n) {
    const auto second = static_cast<std::int64_t>(std::floor(raw.timestamps[i] / 1000.0));
    std::size_t j = i;
    while (j < n && static_cast<std::int64_t>(std::floor(raw.timestamps[j] / 1000.0)) == second) {
      ++j;
    }
    const double count = static_cast<double>(j - i);
    for (std::size_t c = 0; c < raw.columns.cols(); ++c) {
      const auto& src = raw.columns.data[c];
      double sum = 0.0;
      for (std::size_t r = i; r < j; ++r) sum += src[r];
      out.columns.data[c].push_back(sum / count);
    }
    out.seconds.push_back(next_index++);
    i = j;
  }
  return out;
}

AttributeStats describe(std::span<const double> values, std::string name) {
  if (values.size() < 2) {
    fail("insufficient data for statistics on '" + name + "': need at least 2 values");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  AttributeStats s;
  s.name = std::move(name);
  s.min = sorted.front();
  s.max = sorted.back();
  s.median = n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stdev = std::sqrt(ss / static_cast<double>(n - 1));
  // Rounding in the running sum can push the mean a hair outside [min, max].
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

AttributeStats describe(const ColumnSet& columns, std::string_view name) {
  return describe(columns.column(name, kStage), std::string(name));
}

SegmentMap detect_segments(std::span<const double> marker, std::size_t n_segments) {
  if (n_segments < 2) fail("segment count must be at least 2");
  if (marker.size() < n_segments) {
    fail("marker has " + std::to_string(marker.size()) + " values, fewer than " +
         std::to_string(n_segments) + " segments");
  }
  const std::size_t needed = n_segments - 1;
  const double min_separation =
      static_cast<double>(marker.size()) / (2.0 * static_cast<double>(n_segments));

  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i + 1 < marker.size(); ++i) {
    if (marker[i] > marker[i - 1] && marker[i] > marker[i + 1]) candidates.push_back(i);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return marker[a] > marker[b]; });

  std::vector<std::size_t> chosen;
  for (std::size_t c : candidates) {
    if (chosen.size() == needed) break;
    bool separated = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t p) {
      const auto gap = c > p ? c - p : p - c;
      return static_cast<double>(gap) >= min_separation;
    });
    if (separated) chosen.push_back(c);
  }
  if (chosen.size() < needed) {
    throw Error(ErrorKind::Data, kStage,
                "segment detection found " + std::to_string(chosen.size()) +
                    " qualifying marker peaks, " + std::to_string(needed) + " required");
  }
  std::sort(chosen.begin(), chosen.end());
  return SegmentMap(std::move(chosen), marker.size());
}

SegmentMap apply_labels(SegmentMap map, std::vector<Label> pattern) {
  if (pattern.size() != map.segment_count()) {
    throw Error(ErrorKind::Config, kStage,
                "label pattern has " + std::to_string(pattern.size()) +
                    " entries for " + std::to_string(map.segment_count()) + " segments");
  }
  map.labels_ = std::move(pattern);
  return map;
}

std::vector<Label> driving_route_labels() {
  using enum Label;
  return {Normal, Anomalous, Normal, Anomalous, Normal, Anomalous, Normal};
}

}  // namespace pcadca
