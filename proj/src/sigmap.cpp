#include "pcadca/sigmap.hpp"

#include <algorithm>
#include <cmath>

#include "pcadca/error.hpp"

namespace pcadca {
namespace {
constexpr const char* kStage = "sigmap";
}

std::string_view to_string(Category category) {
  switch (category) {
    case Category::Pamp: return "PAMP";
    case Category::Danger: return "Danger";
    case Category::Safe: return "Safe";
  }
  return "?";
}

void WeightTable::validate() const {
  auto nonzero = [](const std::array<double, 3>& row) {
    return std::any_of(row.begin(), row.end(), [](double w) { return w != 0.0; });
  };
  if (!nonzero(csm) || !nonzero(k)) {
    throw Error(ErrorKind::Config, kStage, "each weight row needs a nonzero entry");
  }
}

CategoryRanking category_ranking(const WeightTable& weights) {
  weights.validate();
  CategoryRanking out;
  out.order = kCategories;
  std::stable_sort(out.order.begin(), out.order.end(), [&](Category a, Category b) {
    return std::abs(weights.csm_weight(a)) + std::abs(weights.k_weight(a)) >
           std::abs(weights.csm_weight(b)) + std::abs(weights.k_weight(b));
  });
  for (std::size_t i = 0; i < 3; ++i) {
    out.magnitudes[i] =
        std::abs(weights.csm_weight(out.order[i])) + std::abs(weights.k_weight(out.order[i]));
  }
  return out;
}

SignalAssignment assign_categories(const VariabilityRanking& ranking,
                                   const CategoryRanking& cats) {
  const auto& attrs = ranking.attributes;
  if (attrs.size() < 4) {
    throw Error(ErrorKind::Data, kStage,
                "need at least 4 ranked attributes (antigen + one per category), got " +
                    std::to_string(attrs.size()));
  }
  SignalAssignment out;
  out.antigen = attrs.front();

  const std::size_t m = attrs.size() - 1;
  const std::size_t base = m / 3;
  const std::array<std::size_t, 3> sizes{base, base + m % 3, base};
  std::size_t next = 1;
  for (std::size_t g = 0; g < 3; ++g) {
    auto& list = out.categories[static_cast<std::size_t>(cats.order[g])];
    for (std::size_t i = 0; i < sizes[g]; ++i) list.push_back(attrs[next++]);
  }
  for (const auto& name : out.attributes(Category::Safe)) out.inverted.insert(name);
  return out;
}

int antigen_frequency(double x, int f_min, int f_max) {
  if (!(f_min < f_max)) {
    throw Error(ErrorKind::Config, kStage, "antigen frequency bounds need F_min < F_max");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::Data, kStage, "antigen value outside [0, 1]");
  }
  const double f = static_cast<double>(f_min) + static_cast<double>(f_max - f_min) * x;
  return std::clamp(static_cast<int>(std::floor(f + 0.5)), f_min, f_max);
}

Streams build_streams(const NormalisedTable& table, const SignalAssignment& assignment,
                      int f_min, int f_max) {
  const std::size_t n = table.rows();
  const auto antigen = table.columns.column(assignment.antigen, kStage);

  Streams out;
  out.signals.assign(n, Signals{});
  for (Category c : kCategories) {
    const auto& names = assignment.attributes(c);
    if (names.empty()) continue;
    std::vector<double> sum(n, 0.0);
    for (const auto& name : names) {
      const auto col = table.columns.column(name, kStage);
      const bool inv = assignment.inverted.contains(name);
      for (std::size_t t = 0; t < n; ++t) sum[t] += inv ? 1.0 - col[t] : col[t];
    }
    const double count = static_cast<double>(names.size());
    for (std::size_t t = 0; t < n; ++t) {
      const double v = sum[t] / count;
      switch (c) {
        case Category::Pamp: out.signals[t].pamp = v; break;
        case Category::Danger: out.signals[t].danger = v; break;
        case Category::Safe: out.signals[t].safe = v; break;
      }
    }
  }

  out.antigens.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    out.antigens.push_back({static_cast<std::uint64_t>(table.seconds.empty() ? t : table.seconds[t]),
                            antigen_frequency(antigen[t], f_min, f_max)});
  }
  return out;
}

}  // namespace pcadca
