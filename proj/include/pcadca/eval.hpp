#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pcadca/dca.hpp"
#include "pcadca/ingest.hpp"

namespace pcadca {

struct SegmentClassification {
  double l = 0.0;           // summed excess over the threshold minus summed shortfall
  Label label = Label::Normal;
  Label mean_label = Label::Normal;  // same decision via mean(ks) >= Th
};

struct SegmentPrediction {
  std::size_t segment = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  double l = 0.0;
  Label predicted = Label::Normal;
  Label truth = Label::Normal;
};

struct Rates {
  double tp = 0.0;
  double fp = 0.0;
};

struct RocPoint {
  double threshold = 0.0;
  double tp_rate = 0.0;
  double fp_rate = 0.0;
};

struct ThresholdResult {
  double threshold = 0.0;
  Rates rates;
  std::vector<SegmentPrediction> predictions;
};

struct RocCurve {
  std::vector<RocPoint> points;  // (fp, tp) ascending, anchors included, deduplicated
  double auc = 0.0;
};

struct RocResult {
  std::vector<ThresholdResult> thresholds;  // ascending threshold order
  RocCurve curve;
};

/// Anomalous iff L >= 0.
SegmentClassification classify_segment(std::span<const double> ks, double threshold);

Rates confusion_rates(std::span<const SegmentPrediction> predictions);

/// `count` evenly spaced values from the smallest to the largest K_alpha.
std::vector<double> threshold_grid(const KAlphaSeries& series, std::size_t count = 41);

/// Sorts (fp, tp) points, adds the (0,0) and (1,1) anchors, drops duplicates
/// and integrates with the trapezoidal rule.
RocCurve build_curve(std::vector<RocPoint> points);

/// Classifies every labelled segment of `map` at each threshold. Antigen type
/// ids are second indices into the map's timeline.
RocResult roc_curve(const KAlphaSeries& series, const SegmentMap& map,
                    std::vector<double> thresholds);

}  // namespace pcadca
