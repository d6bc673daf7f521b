#include "pcadca/pca.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "pcadca/error.hpp"

namespace pcadca {
namespace {

constexpr const char* kStage = "pca";
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) sum += a[i * n + j] * a[i * n + j];
    }
  }
  return std::sqrt(sum);
}

std::vector<double> mid_ranks(std::span<const double> pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && pooled[order[j]] == pooled[order[i]]) ++j;
    // positions i..j-1 share the average of ranks i+1..j
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t r = i; r < j; ++r) ranks[order[r]] = rank;
    i = j;
  }
  return ranks;
}

}  // namespace

CovMatrix::CovMatrix(std::size_t order, std::vector<std::string> attributes)
    : order_(order), entries_(order * order, 0.0), attributes_(std::move(attributes)) {
  if (!attributes_.empty() && attributes_.size() != order_) {
    throw Error(ErrorKind::Data, kStage, "attribute names do not match matrix order");
  }
}

CovMatrix CovMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  CovMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(ErrorKind::Data, kStage, "matrix rows must form a square matrix");
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

double CovMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < order_; ++i) t += (*this)(i, i);
  return t;
}

double PcaResult::explained_fraction(std::size_t component) const {
  const double total = std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
  return total > 0.0 ? eigenvalues.at(component) / total : 0.0;
}

std::size_t PcaResult::components_for(double fraction) const {
  const double total = std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
  if (!(total > 0.0)) return order();
  double cumulative = 0.0;
  for (std::size_t j = 0; j < order(); ++j) {
    cumulative += eigenvalues[j];
    if (cumulative / total >= fraction - 1e-12) return j + 1;
  }
  return order();
}

ScoreMode parse_score_mode(std::string_view text) {
  if (text == "subspace") return ScoreMode::Subspace;
  if (text == "pc1") return ScoreMode::Pc1;
  throw Error(ErrorKind::Config, kStage,
              "unknown score mode '" + std::string(text) + "' (expected subspace|pc1)");
}

std::string_view to_string(ScoreMode mode) {
  return mode == ScoreMode::Pc1 ? "pc1" : "subspace";
}

CovMatrix covariance(const ColumnSet& columns, std::span<const std::string> attributes) {
  const std::size_t p = attributes.size();
  if (p < 2) throw Error(ErrorKind::Data, kStage, "covariance needs at least 2 attributes");
  std::vector<std::span<const double>> cols;
  for (const auto& name : attributes) cols.push_back(columns.column(name, kStage));
  const std::size_t n = cols.front().size();
  if (n < 2) {
    throw Error(ErrorKind::Data, kStage, "covariance needs at least 2 rows");
  }

  std::vector<double> means(p);
  for (std::size_t i = 0; i < p; ++i) {
    means[i] = std::accumulate(cols[i].begin(), cols[i].end(), 0.0) / static_cast<double>(n);
  }
  CovMatrix m(p, std::vector<std::string>(attributes.begin(), attributes.end()));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      double sum = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        sum += (cols[i][t] - means[i]) * (cols[j][t] - means[j]);
      }
      m(i, j) = sum / static_cast<double>(n - 1);
      m(j, i) = m(i, j);
    }
  }
  return m;
}

CovMatrix covariance(const NormalisedTable& table, std::span<const std::string> attributes) {
  return covariance(table.columns, attributes);
}

PcaResult jacobi_eigen(const CovMatrix& m) {
  const std::size_t n = m.order();
  if (n == 0) throw Error(ErrorKind::Data, kStage, "empty matrix");

  std::vector<double> a(n * n);
  double frobenius = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i * n + j] = m(i, j);
      frobenius += m(i, j) * m(i, j);
    }
  }
  frobenius = std::sqrt(frobenius);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * (frobenius + 1.0)) {
        throw Error(ErrorKind::Data, kStage, "eigen-decomposition requires a symmetric matrix");
      }
    }
  }

  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double tolerance = 1e-12 * (frobenius + 1.0);
  int sweeps = 0;
  while (off_diagonal_norm(a, n) > tolerance) {
    if (sweeps == kMaxSweeps) {
      throw Error(ErrorKind::Numerical, kStage,
                  "Jacobi iteration did not converge in " + std::to_string(kMaxSweeps) +
                      " sweeps");
    }
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        double t = 0.0;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r * n + p];
          const double arq = a[r * n + q];
          a[r * n + p] = a[p * n + r] = c * arp - s * arq;
          a[r * n + q] = a[q * n + r] = s * arp + c * arq;
        }
        a[p * n + p] -= t * apq;
        a[q * n + q] += t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;

        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v[r * n + p];
          const double vrq = v[r * n + q];
          v[r * n + p] = c * vrp - s * vrq;
          v[r * n + q] = s * vrp + c * vrq;
        }
      }
    }
  }

  // Sign convention, then the dominant attribute of each eigenvector.
  std::vector<std::size_t> dominant(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(v[i * n + j]) > std::abs(v[best * n + j])) best = i;
    }
    dominant[j] = best;
    if (v[best * n + j] < 0.0) {
      for (std::size_t i = 0; i < n; ++i) v[i * n + j] = -v[i * n + j];
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const double lx = a[x * n + x];
    const double ly = a[y * n + y];
    if (lx != ly) return lx > ly;
    return dominant[x] < dominant[y];
  });

  PcaResult out;
  out.attributes = m.attributes();
  if (out.attributes.empty()) {
    for (std::size_t i = 0; i < n; ++i) out.attributes.push_back("x" + std::to_string(i));
  }
  out.sweeps = sweeps;
  out.eigenvalues.resize(n);
  out.loadings.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.eigenvalues[j] = a[src * n + src];
    for (std::size_t i = 0; i < n; ++i) out.loadings[i * n + j] = v[i * n + src];
  }
  return out;
}

VariabilityRanking variability_scores(const PcaResult& pca, std::optional<std::size_t> retained,
                                      ScoreMode mode) {
  const std::size_t p = pca.order();
  const std::size_t k = retained.value_or(pca.components_for(0.9));
  if (k < 1 || k > p) {
    throw Error(ErrorKind::Config, kStage,
                "retained components must be in [1, " + std::to_string(p) + "], got " +
                    std::to_string(k));
  }

  std::vector<double> scores(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    if (mode == ScoreMode::Pc1) {
      scores[i] = std::abs(pca.loading(i, 0));
    } else {
      for (std::size_t j = 0; j < k; ++j) {
        const double w = pca.loading(i, j);
        scores[i] += std::max(pca.eigenvalues[j], 0.0) * w * w;
      }
    }
  }

  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return scores[x] > scores[y]; });

  VariabilityRanking out;
  out.retained = k;
  for (std::size_t idx : order) {
    out.attributes.push_back(pca.attributes[idx]);
    out.scores.push_back(scores[idx]);
  }
  return out;
}

std::vector<MergeCandidate> find_merge_candidates(const PcaResult& pca, double threshold,
                                                  const NormalisedTable& table) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorKind::Config, kStage, "merge threshold must lie in (0, 1]");
  }
  const std::size_t p = pca.order();
  if (p < 2) return {};

  std::vector<MergeCandidate> out;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const double xi = pca.loading(i, 0), yi = pca.loading(i, 1);
      const double xj = pca.loading(j, 0), yj = pca.loading(j, 1);
      const double norms = std::hypot(xi, yi) * std::hypot(xj, yj);
      if (!(norms > 0.0)) continue;
      const double similarity = std::clamp((xi * xj + yi * yj) / norms, -1.0, 1.0);
      if (similarity < threshold) continue;
      const auto test = wilcoxon_rank_sum(table.columns.column(pca.attributes[i], kStage),
                                          table.columns.column(pca.attributes[j], kStage));
      out.push_back({pca.attributes[i], pca.attributes[j], similarity, test.u, test.p_value});
    }
  }
  return out;
}

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorKind::Data, kStage, "rank-sum test needs two non-empty samples");
  }
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na + nb;

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = mid_ranks(pooled);

  const double fa = static_cast<double>(na);
  const double fb = static_cast<double>(nb);
  const double rank_sum = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(na), 0.0);
  const double u = rank_sum - fa * (fa + 1.0) / 2.0;
  const double mean = fa * fb / 2.0;
  const double deviation = std::abs(u - mean);

  RankSumResult out{u, 1.0};
  if (n <= 12) {
    // Every assignment of na of the pooled ranks to sample a is equally likely.
    std::uint64_t extreme = 0, total = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != na) continue;
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) sum += ranks[i];
      }
      const double ui = sum - fa * (fa + 1.0) / 2.0;
      ++total;
      if (std::abs(ui - mean) >= deviation - 1e-9) ++extreme;
    }
    out.p_value = static_cast<double>(extreme) / static_cast<double>(total);
  } else {
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i + 1;
      while (j < n && sorted[j] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i);
      tie_term += t * t * t - t;
      i = j;
    }
    const double fn = static_cast<double>(n);
    const double variance = fa * fb / 12.0 * ((fn + 1.0) - tie_term / (fn * (fn - 1.0)));
    if (variance > 0.0) {
      const double z = std::max(deviation - 0.5, 0.0) / std::sqrt(variance);
      out.p_value = std::erfc(z / std::sqrt(2.0));
    }
  }
  out.p_value = std::min(out.p_value, 1.0);
  return out;
}

}  // namespace pcadca
