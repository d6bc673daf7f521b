#include "pcadca/dca.hpp"

#include <cmath>

#include "pcadca/error.hpp"

namespace pcadca {
namespace {
constexpr const char* kStage = "dca";
}

Context transform_signals(const WeightTable& w, const Signals& s) {
  return {w.csm[0] * s.pamp + w.csm[1] * s.danger + w.csm[2] * s.safe,
          w.k[0] * s.pamp + w.k[1] * s.danger + w.k[2] * s.safe};
}

double default_threshold_step(const WeightTable& weights, std::size_t population) {
  if (population == 0) throw Error(ErrorKind::Config, kStage, "population must be positive");
  double csm_max = 0.0;
  for (double w : weights.csm) csm_max += std::abs(w);
  return 3.0 * csm_max / static_cast<double>(population);
}

Engine::Engine(std::size_t population, double delta, WeightTable weights)
    : weights_(weights) {
  if (population == 0) throw Error(ErrorKind::Config, kStage, "population must be positive");
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorKind::Config, kStage, "threshold step must be positive");
  }
  weights_.validate();
  for (double w : weights_.csm) {
    if (w < 0.0) {
      throw Error(ErrorKind::Config, kStage, "csm weights must be non-negative");
    }
  }
  cells_.resize(population);
  for (std::size_t i = 0; i < population; ++i) {
    cells_[i].index = i + 1;
    cells_[i].migration_threshold = static_cast<double>(i + 1) * delta;
  }
}

void Engine::step(const Signals& signals, const AntigenBatch& antigen) {
  for (int i = 0; i < antigen.multiplicity; ++i) {
    ++cells_[cursor_].antigen_store[antigen.type];
    cursor_ = (cursor_ + 1) % cells_.size();
  }

  const Context ctx = transform_signals(weights_, signals);
  for (auto& cell : cells_) {
    cell.csm_acc += ctx.csm;
    cell.k_acc += ctx.k;
  }

  for (auto& cell : cells_) {
    if (cell.csm_acc >= cell.migration_threshold) present(cell);
  }
}

void Engine::flush() {
  for (auto& cell : cells_) {
    if (!cell.antigen_store.empty()) present(cell);
  }
}

void Engine::present(DendriticCell& cell) {
  if (!cell.antigen_store.empty()) {
    log_.push_back({cell.k_acc, std::move(cell.antigen_store)});
  }
  cell.antigen_store.clear();
  cell.csm_acc = 0.0;
  cell.k_acc = 0.0;
  ++cell.cycles;
}

Engine init_population(std::size_t population, double delta, const WeightTable& weights) {
  return Engine(population, delta, weights);
}

KAlphaSeries k_alpha(const std::vector<Presentation>& log) {
  struct Sums {
    double weighted = 0.0;
    std::int64_t count = 0;
  };
  std::map<std::uint64_t, Sums> by_type;
  for (const auto& p : log) {
    for (const auto& [type, count] : p.counts) {
      auto& s = by_type[type];
      s.weighted += p.k * static_cast<double>(count);
      s.count += count;
    }
  }
  KAlphaSeries out;
  out.reserve(by_type.size());
  for (const auto& [type, s] : by_type) {
    out.push_back({type, s.weighted / static_cast<double>(s.count), s.count});
  }
  return out;
}

KAlphaSeries run(const Streams& streams, std::size_t population, double delta,
                 const WeightTable& weights) {
  if (streams.signals.size() != streams.antigens.size()) {
    throw Error(ErrorKind::Data, kStage, "signal and antigen streams differ in length");
  }
  if (streams.signals.empty()) throw Error(ErrorKind::Data, kStage, "empty input streams");
  Engine engine = init_population(population, delta, weights);
  for (std::size_t t = 0; t < streams.signals.size(); ++t) {
    if (streams.antigens[t].multiplicity < 1) {
      throw Error(ErrorKind::Data, kStage, "antigen multiplicity must be at least 1");
    }
    engine.step(streams.signals[t], streams.antigens[t]);
  }
  engine.flush();
  return k_alpha(engine.presentations());
}

}  // namespace pcadca
