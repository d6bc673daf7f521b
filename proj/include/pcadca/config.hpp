#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcadca/ingest.hpp"
#include "pcadca/pca.hpp"
#include "pcadca/sigmap.hpp"

namespace pcadca {

/// Everything a pipeline run needs. Keys in a config file (and CLI flags)
/// are listed by config_keys().
struct RunConfig {
  std::filesystem::path input;
  std::string time_column = "time";
  std::string marker_column;  // empty: no marker
  std::vector<std::string> exclude;

  std::size_t population = 100;
  std::optional<double> delta;  // default: default_threshold_step()
  int f_min = 15;
  int f_max = 100;
  WeightTable weights;

  std::size_t segments = 7;
  std::vector<std::size_t> boundaries;  // explicit boundaries bypass detection
  std::vector<Label> labels;            // default: driving route pattern

  std::vector<double> thresholds;  // explicit list; otherwise a grid
  std::size_t grid = 41;

  ScoreMode score_mode = ScoreMode::Subspace;
  std::optional<std::size_t> components;  // retained PCs for scoring
  double merge_threshold = 0.95;
  std::optional<double> merge_min_p;  // strict mode: merge only if p > this

  // Manual mapping; when `antigen` is set it replaces the PCA-derived one.
  std::string antigen;
  std::vector<std::string> pamp;
  std::vector<std::string> danger;
  std::vector<std::string> safe;

  std::filesystem::path out_dir = "out";

  /// F_max after clamping to the population size.
  int effective_f_max() const;
  double effective_delta() const;
  /// Throws a Config error when the invariants do not hold.
  void validate() const;
};

/// Recognised keys, identical to the long CLI flag names.
const std::vector<std::string>& config_keys();

/// Applies one key=value setting. Lists are comma separated.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Parses `key = value` lines; blank lines and lines starting with '#' are
/// ignored.
void apply_config_text(RunConfig& config, std::string_view text,
                       std::string_view source = "<config>");
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

}  // namespace pcadca
