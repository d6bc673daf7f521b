#include "pcadca/eval.hpp"

#include <algorithm>

#include "pcadca/error.hpp"

namespace pcadca {
namespace {
constexpr const char* kStage = "eval";
}

SegmentClassification classify_segment(std::span<const double> ks, double threshold) {
  if (ks.empty()) throw Error(ErrorKind::Data, kStage, "cannot classify an empty segment");
  double above = 0.0;
  double below = 0.0;
  double total = 0.0;
  for (double k : ks) {
    if (k >= threshold) {
      above += k - threshold;
    } else {
      below += threshold - k;
    }
    total += k;
  }
  SegmentClassification out;
  out.l = above - below;
  out.label = out.l >= 0.0 ? Label::Anomalous : Label::Normal;
  out.mean_label =
      total / static_cast<double>(ks.size()) >= threshold ? Label::Anomalous : Label::Normal;
  return out;
}

Rates confusion_rates(std::span<const SegmentPrediction> predictions) {
  std::size_t positives = 0, negatives = 0, tp = 0, fp = 0;
  for (const auto& p : predictions) {
    if (p.truth == Label::Anomalous) {
      ++positives;
      if (p.predicted == Label::Anomalous) ++tp;
    } else {
      ++negatives;
      if (p.predicted == Label::Anomalous) ++fp;
    }
  }
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorKind::Data, kStage,
                "rates undefined: need at least one anomalous and one normal segment");
  }
  return {static_cast<double>(tp) / static_cast<double>(positives),
          static_cast<double>(fp) / static_cast<double>(negatives)};
}

std::vector<double> threshold_grid(const KAlphaSeries& series, std::size_t count) {
  if (series.empty()) throw Error(ErrorKind::Data, kStage, "empty K_alpha series");
  if (count == 0) throw Error(ErrorKind::Config, kStage, "threshold grid needs at least 1 point");
  auto [lo, hi] = std::minmax_element(series.begin(), series.end(),
                                      [](const auto& a, const auto& b) { return a.k_alpha < b.k_alpha; });
  const double min = lo->k_alpha;
  const double max = hi->k_alpha;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = count == 1 ? min
                         : min + (max - min) * static_cast<double>(i) /
                                     static_cast<double>(count - 1);
  }
  grid.back() = max;
  return grid;
}

RocCurve build_curve(std::vector<RocPoint> points) {
  points.push_back({0.0, 0.0, 0.0});
  points.push_back({0.0, 1.0, 1.0});
  std::sort(points.begin(), points.end(), [](const RocPoint& a, const RocPoint& b) {
    if (a.fp_rate != b.fp_rate) return a.fp_rate < b.fp_rate;
    return a.tp_rate < b.tp_rate;
  });
  RocCurve curve;
  for (const auto& p : points) {
    if (!curve.points.empty() && curve.points.back().fp_rate == p.fp_rate &&
        curve.points.back().tp_rate == p.tp_rate) {
      continue;
    }
    curve.points.push_back(p);
  }
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    curve.auc += (b.fp_rate - a.fp_rate) * (a.tp_rate + b.tp_rate) / 2.0;
  }
  return curve;
}

RocResult roc_curve(const KAlphaSeries& series, const SegmentMap& map,
                    std::vector<double> thresholds) {
  if (thresholds.empty()) throw Error(ErrorKind::Config, kStage, "no thresholds given");
  if (!map.labelled()) throw Error(ErrorKind::Config, kStage, "segments carry no labels");
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  std::vector<std::vector<double>> segment_ks(map.segment_count());
  for (const auto& e : series) {
    if (e.type >= map.length()) {
      throw Error(ErrorKind::Data, kStage,
                  "antigen type " + std::to_string(e.type) + " beyond the segmented timeline");
    }
    const auto& b = map.boundaries();
    const auto seg = static_cast<std::size_t>(
        std::upper_bound(b.begin(), b.end(), static_cast<std::size_t>(e.type)) - b.begin());
    segment_ks[seg].push_back(e.k_alpha);
  }
  for (std::size_t s = 0; s < segment_ks.size(); ++s) {
    if (segment_ks[s].empty()) {
      throw Error(ErrorKind::Data, kStage,
                  "segment " + std::to_string(s) + " holds no K_alpha values");
    }
  }

  RocResult out;
  std::vector<RocPoint> points;
  for (double th : thresholds) {
    ThresholdResult tr;
    tr.threshold = th;
    for (std::size_t s = 0; s < segment_ks.size(); ++s) {
      const auto c = classify_segment(segment_ks[s], th);
      tr.predictions.push_back({s, map.start(s), map.end(s), c.l, c.label, map.labels()[s]});
    }
    tr.rates = confusion_rates(tr.predictions);
    points.push_back({th, tr.rates.tp, tr.rates.fp});
    out.thresholds.push_back(std::move(tr));
  }
  out.curve = build_curve(std::move(points));
  return out;
}

}  // namespace pcadca
