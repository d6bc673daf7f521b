#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcadca/dca.hpp"
#include "pcadca/eval.hpp"
#include "pcadca/ingest.hpp"
#include "pcadca/pca.hpp"
#include "pcadca/prep.hpp"
#include "pcadca/sigmap.hpp"

namespace pcadca {

/// "%.6g".
std::string format_real(double value);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::string stats_csv(std::span<const AttributeStats> stats);
std::string normalised_csv(const NormalisedTable& table);
std::string loadings_csv(const PcaResult& pca, const VariabilityRanking& ranking);
std::string assignment_csv(const VariabilityRanking& ranking, const SignalAssignment& assignment);
std::string kalpha_csv(const KAlphaSeries& series);
std::string roc_csv(const RocResult& roc);
std::string segments_csv(const ThresholdResult& result);

}  // namespace pcadca
