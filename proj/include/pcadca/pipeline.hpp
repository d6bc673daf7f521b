#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "pcadca/config.hpp"
#include "pcadca/dca.hpp"
#include "pcadca/eval.hpp"
#include "pcadca/ingest.hpp"
#include "pcadca/pca.hpp"
#include "pcadca/prep.hpp"
#include "pcadca/sigmap.hpp"

namespace pcadca {

struct MergeDecision {
  MergeCandidate candidate;
  bool merged = false;
  std::string merged_name;  // empty unless merged
};

struct Analysis {
  RawTable raw;
  ResampledTable resampled;
  NormalisedTable normalised;  // after merges; still holds the marker
  PcaResult initial_pca;       // before merging
  std::vector<MergeDecision> merges;
  PcaResult pca;               // on the merged attribute set
  VariabilityRanking ranking;
  CategoryRanking categories;
  SignalAssignment assignment;
  bool manual_assignment = false;
};

struct RunResult {
  Analysis analysis;
  Streams streams;
  double delta = 0.0;
  int f_max = 0;
  KAlphaSeries kalpha;
  SegmentMap segments;
  RocResult roc;
};

/// Name for two merged columns: their shared trailing text when that is a
/// whole word (e.g. "foot GSR" + "hand GSR" -> "GSR"), otherwise "a+b".
std::string merged_name(const std::string& a, const std::string& b);

/// ingest -> prep -> pca -> sigmap.
Analysis analyse(const RunConfig& config);

/// Full pipeline through segment classification.
RunResult run_pipeline(const RunConfig& config);

/// Command entry points: write their artifacts under config.out_dir and a
/// human-readable summary to `summary`.
void cmd_stats(const RunConfig& config, std::ostream& summary);
void cmd_analyse(const RunConfig& config, std::ostream& summary);
void cmd_run(const RunConfig& config, std::ostream& summary);

}  // namespace pcadca
