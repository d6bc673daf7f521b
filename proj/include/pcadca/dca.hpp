#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "pcadca/sigmap.hpp"

namespace pcadca {

struct Context {
  double csm = 0.0;
  double k = 0.0;
};

struct DendriticCell {
  std::size_t index = 0;  // 1-based
  double migration_threshold = 0.0;
  double csm_acc = 0.0;
  double k_acc = 0.0;
  std::map<std::uint64_t, int> antigen_store;
  std::size_t cycles = 0;  // threshold crossings, with or without antigen
};

struct Presentation {
  double k = 0.0;
  std::map<std::uint64_t, int> counts;
};

struct KAlphaEntry {
  std::uint64_t type = 0;
  double k_alpha = 0.0;
  std::int64_t presented_count = 0;

  bool operator==(const KAlphaEntry&) const = default;
};

/// Entries ordered by antigen type.
using KAlphaSeries = std::vector<KAlphaEntry>;

Context transform_signals(const WeightTable& weights, const Signals& signals);

/// delta = 3 * sum|csm weights| / population, so roughly two thirds of the
/// thresholds exceed the largest csm a single input can produce.
double default_threshold_step(const WeightTable& weights, std::size_t population);

/// Deterministic DC population. Cell i (1-based) migrates once its csm
/// accumulator reaches i * delta.
class Engine {
 public:
  Engine(std::size_t population, double delta, WeightTable weights);

  /// Hands out the batch round-robin from the cursor, adds the fused
  /// signals to every cell, then migrates every cell at or over threshold.
  void step(const Signals& signals, const AntigenBatch& antigen);

  /// Presents and resets every cell still holding antigen.
  void flush();

  const std::vector<DendriticCell>& cells() const { return cells_; }
  const std::vector<Presentation>& presentations() const { return log_; }
  std::size_t cursor() const { return cursor_; }
  const WeightTable& weights() const { return weights_; }

 private:
  void present(DendriticCell& cell);

  std::vector<DendriticCell> cells_;
  std::size_t cursor_ = 0;
  std::vector<Presentation> log_;
  WeightTable weights_;
};

/// Builds a fresh engine; see Engine.
Engine init_population(std::size_t population, double delta, const WeightTable& weights);

/// Per type: the antigen-count-weighted mean of the presenting cells' k.
KAlphaSeries k_alpha(const std::vector<Presentation>& log);

/// init_population, one step per second, flush, k_alpha.
KAlphaSeries run(const Streams& streams, std::size_t population, double delta,
                 const WeightTable& weights);

}  // namespace pcadca
