#include <random>

#include "doctest.h"
#include "pcadca/dca.hpp"
#include "pcadca/error.hpp"

using namespace pcadca;

namespace {

Streams constant_streams(std::size_t seconds, Signals s, int multiplicity) {
  Streams out;
  for (std::size_t t = 0; t < seconds; ++t) {
    out.signals.push_back(s);
    out.antigens.push_back({t, multiplicity});
  }
  return out;
}

Streams random_streams(std::mt19937_64& rng, std::size_t seconds) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> f(1, 30);
  Streams out;
  for (std::size_t t = 0; t < seconds; ++t) {
    out.signals.push_back({u(rng), u(rng), u(rng)});
    out.antigens.push_back({t, f(rng)});
  }
  return out;
}

}  // namespace

TEST_SUITE("dca") {
  TEST_CASE("transform_signals") {
    const WeightTable w;
    auto c = transform_signals(w, {1, 1, 1});
    CHECK(c.csm == 5.0);
    CHECK(c.k == 0.0);
    c = transform_signals(w, {0, 0, 1});
    CHECK(c.csm == 2.0);
    CHECK(c.k == -3.0);
    c = transform_signals(w, {0, 0, 0});
    CHECK(c.csm == 0.0);
    CHECK(c.k == 0.0);
  }

  TEST_CASE("init_population") {
    const auto e = init_population(4, 0.5, WeightTable{});
    REQUIRE(e.cells().size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(e.cells()[i].index == i + 1);
      CHECK(e.cells()[i].migration_threshold == 0.5 * static_cast<double>(i + 1));
      CHECK(e.cells()[i].csm_acc == 0.0);
      CHECK(e.cells()[i].antigen_store.empty());
    }
    CHECK(e.cursor() == 0);
    CHECK(e.presentations().empty());

    const double delta = default_threshold_step(WeightTable{}, 100);
    CHECK(delta == doctest::Approx(0.15));
    const auto d = init_population(100, delta, WeightTable{});
    const auto above = std::count_if(d.cells().begin(), d.cells().end(),
                                     [](const DendriticCell& c) { return c.migration_threshold > 5.0; });
    CHECK(above == 67);  // cells 34..100

    const auto one = init_population(1, 10, WeightTable{});
    CHECK(one.cells().front().migration_threshold == 10.0);

    CHECK_THROWS_AS(init_population(0, 1, WeightTable{}), Error);
    CHECK_THROWS_AS(init_population(3, 0, WeightTable{}), Error);
    CHECK_THROWS_AS(init_population(3, -1, WeightTable{}), Error);
    CHECK_THROWS_AS(init_population(3, 1, WeightTable{{-1, 1, 1}, {1, 1, 1}}), Error);
  }

  TEST_CASE("step") {
    SUBCASE("both cells migrate after one step") {
      auto e = init_population(2, 0.5, WeightTable{});
      e.step({1, 0, 0}, {0, 2});
      REQUIRE(e.presentations().size() == 2);
      for (const auto& p : e.presentations()) {
        CHECK(p.k == 2.0);
        CHECK(p.counts == std::map<std::uint64_t, int>{{0, 1}});
      }
      for (const auto& c : e.cells()) {
        CHECK(c.csm_acc == 0.0);
        CHECK(c.antigen_store.empty());
      }
    }
    SUBCASE("round robin") {
      auto e = init_population(2, 100, WeightTable{});
      e.step({0, 0, 0}, {4, 3});
      CHECK(e.cells()[0].antigen_store.at(4) == 2);
      CHECK(e.cells()[1].antigen_store.at(4) == 1);
      CHECK(e.cursor() == 1);
    }
    SUBCASE("zero signal changes no accumulator") {
      auto e = init_population(5, 0.1, WeightTable{});
      e.step({0, 0, 0}, {0, 7});
      for (const auto& c : e.cells()) CHECK(c.csm_acc == 0.0);
      CHECK(e.presentations().empty());
    }
    SUBCASE("threshold reached with an empty store resets silently") {
      auto e = init_population(3, 0.5, WeightTable{});
      e.step({1, 0, 0}, {0, 1});
      CHECK(e.presentations().size() == 1);
      for (const auto& c : e.cells()) {
        CHECK(c.cycles == 1);
        CHECK(c.csm_acc == 0.0);
      }
    }
  }

  TEST_CASE("flush") {
    auto e = init_population(1, 1e9, WeightTable{});
    e.step({0, 0, 1.0 / 3.0}, {3, 2});
    e.flush();
    REQUIRE(e.presentations().size() == 1);
    CHECK(e.presentations()[0].k == doctest::Approx(-1.0));
    CHECK(e.presentations()[0].counts == std::map<std::uint64_t, int>{{3, 2}});
    e.flush();
    CHECK(e.presentations().size() == 1);
  }

  TEST_CASE("k_alpha") {
    CHECK(k_alpha({{2.0, {{7, 4}}}}) == KAlphaSeries{{7, 2.0, 4}});
    const auto s = k_alpha({{1.0, {{5, 3}}}, {-1.0, {{5, 1}}}});
    REQUIRE(s.size() == 1);
    CHECK(s[0].k_alpha == 0.5);
    CHECK(s[0].presented_count == 4);
    CHECK(k_alpha({}).empty());
  }

  TEST_CASE("run examples and errors") {
    const auto safe = run(constant_streams(10, {0, 0, 1}, 15), 100, 0.15, WeightTable{});
    CHECK(safe.size() == 10);
    for (const auto& e : safe) CHECK(e.k_alpha < 0.0);
    const auto pamp = run(constant_streams(10, {1, 0, 0}, 15), 100, 0.15, WeightTable{});
    for (const auto& e : pamp) CHECK(e.k_alpha > 0.0);

    Streams one;
    one.signals = {{0.2, 0.4, 0.6}};
    one.antigens = {{0, 15}};
    const auto single = run(one, 1, 1e9, WeightTable{});
    REQUIRE(single.size() == 1);
    CHECK(single[0].k_alpha == transform_signals(WeightTable{}, one.signals[0]).k);
    CHECK(single[0].presented_count == 15);

    Streams bad = one;
    bad.antigens.clear();
    CHECK_THROWS_AS(run(bad, 1, 1, WeightTable{}), Error);
    CHECK_THROWS_AS(run(Streams{}, 1, 1, WeightTable{}), Error);
  }

  TEST_CASE("antigen conservation and determinism") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t seconds = 1 + rng() % 50;
      const std::size_t population = 1 + rng() % 20;
      const auto streams = random_streams(rng, seconds);
      const auto a = run(streams, population, 0.3, WeightTable{});
      const auto b = run(streams, population, 0.3, WeightTable{});
      CHECK(a == b);
      REQUIRE(a.size() == seconds);
      for (std::size_t t = 0; t < seconds; ++t) {
        CHECK(a[t].type == t);
        CHECK(a[t].presented_count == streams.antigens[t].multiplicity);
        CHECK(std::abs(a[t].k_alpha) <= 3.0 * static_cast<double>(seconds));
      }
    }
  }

  TEST_CASE("single cell accumulates the whole run") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      const auto streams = random_streams(rng, 1 + rng() % 40);
      double k_sum = 0.0;
      for (const auto& s : streams.signals) k_sum += transform_signals(WeightTable{}, s).k;
      const auto out = run(streams, 1, 1e12, WeightTable{});
      for (const auto& e : out) CHECK(e.k_alpha == doctest::Approx(k_sum).epsilon(1e-12));
    }
  }

  TEST_CASE("smaller thresholds migrate at least as often") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 20; ++trial) {
      const auto streams = random_streams(rng, 60);
      auto e = init_population(20, 0.4, WeightTable{});
      std::vector<long> first(20, -1);
      for (std::size_t t = 0; t < streams.signals.size(); ++t) {
        e.step(streams.signals[t], streams.antigens[t]);
        for (std::size_t i = 0; i + 1 < 20; ++i) {
          CHECK(e.cells()[i].cycles >= e.cells()[i + 1].cycles);
        }
        for (std::size_t i = 0; i < 20; ++i) {
          if (first[i] < 0 && e.cells()[i].cycles > 0) first[i] = static_cast<long>(t);
        }
      }
      for (std::size_t i = 0; i + 1 < 20; ++i) {
        if (first[i + 1] >= 0) CHECK((first[i] >= 0 && first[i] <= first[i + 1]));
      }
    }
  }
}
