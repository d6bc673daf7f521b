#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcadca/prep.hpp"

namespace pcadca {

/// Dense symmetric covariance matrix, row-major, with optional attribute names.
class CovMatrix {
 public:
  CovMatrix() = default;
  explicit CovMatrix(std::size_t order, std::vector<std::string> attributes = {});
  /// From explicit rows; rows must form a square matrix.
  static CovMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t order() const { return order_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * order_ + j]; }

  const std::vector<std::string>& attributes() const { return attributes_; }
  double trace() const;

 private:
  std::size_t order_ = 0;
  std::vector<double> entries_;
  std::vector<std::string> attributes_;
};

/// Eigen-decomposition of a covariance matrix. Eigenvalues are descending;
/// loading(i, j) is the weight of attribute i on component j.
struct PcaResult {
  std::vector<std::string> attributes;
  std::vector<double> eigenvalues;
  std::vector<double> loadings;  // p x p, row = attribute, column = component
  int sweeps = 0;

  std::size_t order() const { return eigenvalues.size(); }
  double loading(std::size_t attribute, std::size_t component) const {
    return loadings[attribute * order() + component];
  }
  double explained_fraction(std::size_t component) const;
  /// Smallest number of leading components explaining at least `fraction`.
  std::size_t components_for(double fraction) const;
};

enum class ScoreMode {
  Subspace,  // sum over retained components of eigenvalue * loading^2
  Pc1,       // |loading on the first component|
};

ScoreMode parse_score_mode(std::string_view text);
std::string_view to_string(ScoreMode mode);

struct VariabilityRanking {
  std::vector<std::string> attributes;  // highest variability first
  std::vector<double> scores;
  std::size_t retained = 0;
};

struct MergeCandidate {
  std::string first;
  std::string second;
  double similarity = 0.0;
  double u_statistic = 0.0;
  double p_value = 1.0;
};

struct RankSumResult {
  double u = 0.0;
  double p_value = 1.0;
};

/// Sample covariance (n - 1) of the named columns.
CovMatrix covariance(const NormalisedTable& table, std::span<const std::string> attributes);
CovMatrix covariance(const ColumnSet& columns, std::span<const std::string> attributes);

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops to
/// 1e-12 * (||m||_F + 1); at most 100 sweeps. Each eigenvector is signed so
/// its largest-magnitude entry is positive; equal eigenvalues are ordered by
/// the index of their eigenvector's dominant attribute.
PcaResult jacobi_eigen(const CovMatrix& m);

/// `retained` defaults to components_for(0.9). Ties keep input column order.
VariabilityRanking variability_scores(const PcaResult& pca,
                                      std::optional<std::size_t> retained = std::nullopt,
                                      ScoreMode mode = ScoreMode::Subspace);

/// Attribute pairs whose loading vectors over the first two components have
/// cosine similarity >= threshold, annotated with a rank-sum test of the
/// underlying columns.
std::vector<MergeCandidate> find_merge_candidates(const PcaResult& pca, double threshold,
                                                  const NormalisedTable& table);

/// Wilcoxon rank-sum (Mann-Whitney U) test with mid-ranks. Exact two-sided p
/// by enumeration for n_a + n_b <= 12, otherwise the tie-corrected normal
/// approximation with continuity correction.
RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

}  // namespace pcadca
