#include "pcadca/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pcadca/dca.hpp"
#include "pcadca/error.hpp"

namespace pcadca {
namespace {

constexpr const char* kStage = "config";

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view why) {
  throw Error(ErrorKind::Config, kStage,
              "invalid value '" + std::string(value) + "' for '" + std::string(key) +
                  "': " + std::string(why));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    auto comma = value.find(',', pos);
    if (comma == std::string_view::npos) comma = value.size();
    auto item = trim(value.substr(pos, comma - pos));
    if (!item.empty()) out.emplace_back(item);
    pos = comma + 1;
  }
  return out;
}

double to_real(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) bad(key, text, "not a number");
  return v;
}

long long to_integer(std::string_view key, std::string_view text) {
  text = trim(text);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) bad(key, text, "not an integer");
  return v;
}

std::size_t to_count(std::string_view key, std::string_view text) {
  const auto v = to_integer(key, text);
  if (v < 0) bad(key, text, "must be non-negative");
  return static_cast<std::size_t>(v);
}

std::vector<double> to_reals(std::string_view key, std::string_view value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(to_real(key, item));
  return out;
}

std::array<double, 3> to_weight_row(std::string_view key, std::string_view value) {
  const auto v = to_reals(key, value);
  if (v.size() != 3) bad(key, value, "expected three weights (PAMP,Danger,Safe)");
  return {v[0], v[1], v[2]};
}

}  // namespace

int RunConfig::effective_f_max() const {
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::max(f_max, 0)),
                                                population));
}

double RunConfig::effective_delta() const {
  return delta.value_or(default_threshold_step(weights, population));
}

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::Config, kStage, m); };
  if (population < 1) fail("population must be at least 1");
  if (delta && !(*delta > 0.0)) fail("delta must be positive");
  if (f_min < 1) fail("fmin must be at least 1");
  if (!(f_min < effective_f_max())) {
    fail("need fmin < fmax (fmax clamped to the population size " +
         std::to_string(population) + ")");
  }
  for (std::size_t i = 1; i < boundaries.size(); ++i) {
    if (boundaries[i] <= boundaries[i - 1]) fail("boundaries must be strictly increasing");
  }
  if (boundaries.empty() && segments < 2) fail("segments must be at least 2");
  if (grid < 1) fail("grid must be at least 1");
  if (!(merge_threshold > 0.0 && merge_threshold <= 1.0)) {
    fail("merge-threshold must lie in (0, 1]");
  }
  if (!antigen.empty() && (pamp.empty() || danger.empty() || safe.empty())) {
    fail("a manual mapping needs antigen, pamp, danger and safe");
  }
  weights.validate();
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "input",      "time-col",    "marker-col", "exclude",     "population",
      "delta",      "fmin",        "fmax",       "weights-csm", "weights-k",
      "segments",   "boundaries",  "labels",     "thresholds",  "grid",
      "score-mode", "components",  "merge-threshold", "merge-min-p",
      "antigen",    "pamp",        "danger",     "safe",        "out-dir"};
  return keys;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  if (key == "input") {
    c.input = std::string(value);
  } else if (key == "time-col") {
    c.time_column = std::string(value);
  } else if (key == "marker-col") {
    c.marker_column = std::string(value);
  } else if (key == "exclude") {
    c.exclude = split_list(value);
  } else if (key == "population") {
    c.population = to_count(key, value);
  } else if (key == "delta") {
    c.delta = to_real(key, value);
  } else if (key == "fmin") {
    c.f_min = static_cast<int>(to_integer(key, value));
  } else if (key == "fmax") {
    c.f_max = static_cast<int>(to_integer(key, value));
  } else if (key == "weights-csm") {
    c.weights.csm = to_weight_row(key, value);
  } else if (key == "weights-k") {
    c.weights.k = to_weight_row(key, value);
  } else if (key == "segments") {
    c.segments = to_count(key, value);
  } else if (key == "boundaries") {
    c.boundaries.clear();
    for (const auto& item : split_list(value)) c.boundaries.push_back(to_count(key, item));
  } else if (key == "labels") {
    c.labels.clear();
    for (const auto& item : split_list(value)) c.labels.push_back(parse_label(item));
  } else if (key == "thresholds") {
    c.thresholds = to_reals(key, value);
  } else if (key == "grid") {
    c.grid = to_count(key, value);
  } else if (key == "score-mode") {
    c.score_mode = parse_score_mode(value);
  } else if (key == "components") {
    c.components = to_count(key, value);
  } else if (key == "merge-threshold") {
    c.merge_threshold = to_real(key, value);
  } else if (key == "merge-min-p") {
    c.merge_min_p = to_real(key, value);
  } else if (key == "antigen") {
    c.antigen = std::string(value);
  } else if (key == "pamp") {
    c.pamp = split_list(value);
  } else if (key == "danger") {
    c.danger = split_list(value);
  } else if (key == "safe") {
    c.safe = split_list(value);
  } else if (key == "out-dir") {
    c.out_dir = std::string(value);
  } else {
    throw Error(ErrorKind::Config, kStage, "unknown key '" + std::string(key) + "'");
  }
}

void apply_config_text(RunConfig& config, std::string_view text, std::string_view source) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::Config, kStage,
                  std::string(source) + ":" + std::to_string(line_no) +
                      ": expected key=value");
    }
    apply_setting(config, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Config, kStage, "cannot open config '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(config, buf.str(), path.string());
}

}  // namespace pcadca
