#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pcadca/error.hpp"
#include "pcadca/eval.hpp"

using namespace pcadca;

namespace {

SegmentPrediction pred(Label truth, Label predicted) {
  SegmentPrediction p;
  p.truth = truth;
  p.predicted = predicted;
  return p;
}

KAlphaSeries series_of(const std::vector<double>& ks) {
  KAlphaSeries s;
  for (std::size_t i = 0; i < ks.size(); ++i) s.push_back({i, ks[i], 1});
  return s;
}

}  // namespace

TEST_SUITE("eval") {
  TEST_CASE("classify_segment") {
    const std::vector<double> mixed{0.5, -0.2};
    auto c = classify_segment(mixed, 0.0);
    CHECK(c.l == doctest::Approx(0.3));
    CHECK(c.label == Label::Anomalous);

    for (double v : {-1.5, 0.1, 2.0, 1e-3}) {
      const std::vector<double> same(3, v);
      c = classify_segment(same, v);
      CHECK(c.l == 0.0);
      CHECK(c.label == Label::Anomalous);
    }

    const std::vector<double> low{-1, -1};
    c = classify_segment(low, 0.0);
    CHECK(c.l == -2.0);
    CHECK(c.label == Label::Normal);

    const std::vector<double> none;
    CHECK_THROWS_AS(classify_segment(none, 0.0), Error);
  }

  TEST_CASE("classify_segment properties") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<double> ks(1 + rng() % 30);
      for (auto& k : ks) k = u(rng);
      const double th = u(rng);
      const auto c = classify_segment(ks, th);
      CHECK(c.label == c.mean_label);
      CHECK(c.l == doctest::Approx(oracle::segment_statistic(ks, th)));
      std::shuffle(ks.begin(), ks.end(), rng);
      CHECK(classify_segment(ks, th).label == c.label);
      // raising the threshold never turns normal into anomalous
      if (c.label == Label::Normal) CHECK(classify_segment(ks, th + 0.5).label == Label::Normal);
    }
  }

  TEST_CASE("confusion_rates") {
    using enum Label;
    std::vector<SegmentPrediction> p{pred(Anomalous, Anomalous), pred(Anomalous, Anomalous),
                                     pred(Anomalous, Anomalous), pred(Normal, Anomalous),
                                     pred(Normal, Normal),       pred(Normal, Normal),
                                     pred(Normal, Normal)};
    auto r = confusion_rates(p);
    CHECK(r.tp == 1.0);
    CHECK(r.fp == 0.25);

    p[3].predicted = Normal;
    r = confusion_rates(p);
    CHECK(r.tp == 1.0);
    CHECK(r.fp == 0.0);

    p[0].predicted = Normal;
    r = confusion_rates(p);
    CHECK(std::round(r.tp * 100) / 100 == 0.67);
    CHECK(r.fp == 0.0);

    std::vector<SegmentPrediction> only{pred(Normal, Normal)};
    CHECK_THROWS_AS(confusion_rates(only), Error);
  }

  TEST_CASE("build_curve") {
    const auto anchors = build_curve({});
    CHECK(anchors.points.size() == 2);
    CHECK(anchors.auc == 0.5);

    const auto table = build_curve({{-2, 1, 0.75}, {-1.5, 1, 0.25}, {-1, 1, 0.25},
                                    {-0.5, 2.0 / 3.0, 0}, {0, 0, 0}});
    // points (0,0) (0,2/3) (0.25,1) (0.75,1) (1,1)
    CHECK(table.points.size() == 5);
    CHECK(table.auc == doctest::Approx(0.25 * (2.0 / 3.0 + 1.0) / 2.0 + 0.75));
  }

  TEST_CASE("roc_curve") {
    const auto map = apply_labels(SegmentMap({2, 4, 6}, 8),
                                  {Label::Normal, Label::Anomalous, Label::Normal, Label::Anomalous});
    SUBCASE("separable") {
      const auto s = series_of({-2, -1, 3, 2, -1, -3, 1, 4});
      const auto roc = roc_curve(s, map, threshold_grid(s));
      CHECK(roc.curve.auc == 1.0);
      bool perfect = false;
      for (const auto& t : roc.thresholds) perfect |= t.rates.tp == 1.0 && t.rates.fp == 0.0;
      CHECK(perfect);
      for (std::size_t i = 1; i < roc.thresholds.size(); ++i) {
        CHECK(roc.thresholds[i].rates.tp <= roc.thresholds[i - 1].rates.tp);
        CHECK(roc.thresholds[i].rates.fp <= roc.thresholds[i - 1].rates.fp);
      }
    }
    SUBCASE("constant series") {
      const auto s = series_of(std::vector<double>(8, 0.7));
      const auto roc = roc_curve(s, map, {-1.0, 0.7, 2.0});
      for (const auto& t : roc.thresholds) {
        const bool corner = (t.rates.tp == 0 && t.rates.fp == 0) || (t.rates.tp == 1 && t.rates.fp == 1);
        CHECK(corner);
      }
      CHECK(std::abs(roc_curve(s, map, threshold_grid(s)).curve.auc - 0.5) <= 1e-12);
      CHECK(std::abs(roc.curve.auc - 0.5) <= 1e-12);
    }
    SUBCASE("errors") {
      const auto s = series_of({1, 2});
      CHECK_THROWS_AS(roc_curve(s, map, {0.0}), Error);  // empty segments
      CHECK_THROWS_AS(roc_curve(series_of(std::vector<double>(8, 1)), map, {}), Error);
      CHECK_THROWS_AS(roc_curve(series_of(std::vector<double>(9, 1)), map, {0.0}), Error);
      CHECK_THROWS_AS(roc_curve(series_of(std::vector<double>(8, 1)), SegmentMap({2}, 8), {0.0}),
                      Error);
    }
  }

  TEST_CASE("threshold_grid") {
    const auto g = threshold_grid(series_of({-1, 3, 1}), 5);
    CHECK(g == std::vector<double>{-1, 0, 1, 2, 3});
    CHECK(threshold_grid(series_of({-1, 3, 1})).size() == 41);
    CHECK_THROWS_AS(threshold_grid({}), Error);
  }
}
