#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pcadca/pca.hpp"
#include "pcadca/prep.hpp"

namespace pcadca {

enum class Category : std::size_t { Pamp = 0, Danger = 1, Safe = 2 };

inline constexpr std::array<Category, 3> kCategories{Category::Pamp, Category::Danger,
                                                     Category::Safe};

std::string_view to_string(Category category);

/// Signal transformation weights: one csm row and one k row over
/// (PAMP, Danger, Safe).
struct WeightTable {
  std::array<double, 3> csm{2.0, 1.0, 2.0};
  std::array<double, 3> k{2.0, 1.0, -3.0};

  double csm_weight(Category c) const { return csm[static_cast<std::size_t>(c)]; }
  double k_weight(Category c) const { return k[static_cast<std::size_t>(c)]; }

  /// Throws unless each row has a nonzero weight.
  void validate() const;
};

struct CategoryRanking {
  std::array<Category, 3> order{};
  std::array<double, 3> magnitudes{};  // aligned with `order`
};

struct SignalAssignment {
  std::string antigen;
  std::array<std::vector<std::string>, 3> categories;  // indexed by Category
  std::set<std::string> inverted;

  const std::vector<std::string>& attributes(Category c) const {
    return categories[static_cast<std::size_t>(c)];
  }
};

struct Signals {
  double pamp = 0.0;
  double danger = 0.0;
  double safe = 0.0;
};

struct AntigenBatch {
  std::uint64_t type = 0;
  int multiplicity = 0;
};

struct Streams {
  std::vector<Signals> signals;
  std::vector<AntigenBatch> antigens;
};

/// Magnitude = |csm weight| + |k weight|, descending; ties keep
/// PAMP, Danger, Safe order.
CategoryRanking category_ranking(const WeightTable& weights);

/// The top-ranked attribute becomes the antigen; the rest are cut into three
/// contiguous runs of floor(m/3) for the categories in `cats` order, with any
/// surplus going to the middle run. Safe attributes are inverted.
SignalAssignment assign_categories(const VariabilityRanking& ranking,
                                   const CategoryRanking& cats);

/// round_half_up(f_min + (f_max - f_min) * x).
int antigen_frequency(double x, int f_min = 15, int f_max = 100);

Streams build_streams(const NormalisedTable& table, const SignalAssignment& assignment,
                      int f_min = 15, int f_max = 100);

}  // namespace pcadca
