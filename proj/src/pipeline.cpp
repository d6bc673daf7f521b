#include "pcadca/pipeline.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pcadca/error.hpp"
#include "pcadca/report.hpp"

namespace pcadca {
namespace {

std::vector<std::string> pca_attributes(const NormalisedTable& table, const RunConfig& config) {
  std::vector<std::string> out;
  for (const auto& name : table.columns.names) {
    if (name != config.marker_column) out.push_back(name);
  }
  return out;
}

RawTable load_input(const RunConfig& config) {
  if (config.input.empty()) throw Error(ErrorKind::Config, "config", "no input file given");
  auto raw = load_csv(config.input, config.time_column);
  for (const auto& name : config.exclude) {
    if (!raw.columns.contains(name)) {
      throw Error(ErrorKind::Config, "config", "excluded column '" + name + "' not in input");
    }
  }
  if (!config.marker_column.empty() && !raw.columns.contains(config.marker_column)) {
    throw Error(ErrorKind::Config, "config",
                "marker column '" + config.marker_column + "' not in input");
  }
  return raw;
}

SignalAssignment manual_assignment(const RunConfig& config, const NormalisedTable& table) {
  SignalAssignment a;
  a.antigen = config.antigen;
  a.categories[static_cast<std::size_t>(Category::Pamp)] = config.pamp;
  a.categories[static_cast<std::size_t>(Category::Danger)] = config.danger;
  a.categories[static_cast<std::size_t>(Category::Safe)] = config.safe;
  a.inverted.insert(config.safe.begin(), config.safe.end());
  std::vector<std::string> all{a.antigen};
  for (Category c : kCategories) {
    for (const auto& n : a.attributes(c)) all.push_back(n);
  }
  for (const auto& n : all) {
    if (!table.columns.contains(n)) {
      throw Error(ErrorKind::Config, "sigmap", "mapped attribute '" + n + "' not available");
    }
  }
  return a;
}

std::string join(const std::vector<std::string>& items, std::string_view sep = ", ") {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

void describe_analysis(const Analysis& a, std::ostream& os) {
  os << "ranking (" << (a.ranking.retained) << " retained components): "
     << join(a.ranking.attributes) << "\n";
  for (const auto& m : a.merges) {
    os << "merge candidate: " << m.candidate.first << " ~ " << m.candidate.second
       << " similarity=" << format_real(m.candidate.similarity)
       << " p=" << format_real(m.candidate.p_value)
       << (m.merged ? " -> merged as " + m.merged_name : std::string(" -> not merged")) << "\n";
  }
  os << "category order:";
  for (std::size_t i = 0; i < 3; ++i) {
    os << " " << to_string(a.categories.order[i]) << "(" << format_real(a.categories.magnitudes[i])
       << ")";
  }
  os << "\n";
  os << "antigen: " << a.assignment.antigen << (a.manual_assignment ? " (manual mapping)" : "")
     << "\n";
  for (Category c : kCategories) {
    std::vector<std::string> names;
    for (const auto& n : a.assignment.attributes(c)) {
      names.push_back(a.assignment.inverted.contains(n) ? "inverted " + n : n);
    }
    os << to_string(c) << ": " << join(names) << "\n";
  }
}

void write_analysis(const Analysis& a, const RunConfig& config) {
  write_atomic(config.out_dir / "loadings.csv", loadings_csv(a.pca, a.ranking));
  write_atomic(config.out_dir / "assignment.csv", assignment_csv(a.ranking, a.assignment));
  std::string merges = "first,second,similarity,u,p_value,merged,merged_name\n";
  for (const auto& m : a.merges) {
    merges += m.candidate.first + "," + m.candidate.second + "," +
              format_real(m.candidate.similarity) + "," + format_real(m.candidate.u_statistic) +
              "," + format_real(m.candidate.p_value) + "," + (m.merged ? "yes" : "no") + "," +
              m.merged_name + "\n";
  }
  write_atomic(config.out_dir / "merges.csv", merges);
}

}  // namespace

std::string merged_name(const std::string& a, const std::string& b) {
  const auto boundary = [](char c) { return c == ' ' || c == '_' || c == '-' || c == '.'; };
  std::size_t common = 0;
  while (common < a.size() && common < b.size() &&
         a[a.size() - 1 - common] == b[b.size() - 1 - common]) {
    ++common;
  }
  if (common < a.size() && common < b.size()) {
    std::string suffix = a.substr(a.size() - common);
    if (!(boundary(a[a.size() - 1 - common]) && boundary(b[b.size() - 1 - common]))) {
      const auto cut = std::find_if(suffix.begin(), suffix.end(), boundary);
      suffix = cut == suffix.end() ? std::string() : std::string(cut, suffix.end());
    }
    while (!suffix.empty() && boundary(suffix.front())) suffix.erase(suffix.begin());
    if (!suffix.empty()) return suffix;
  }
  return a + "+" + b;
}

Analysis analyse(const RunConfig& config) {
  config.validate();
  Analysis a;
  a.raw = load_input(config);
  a.resampled = resample_average(a.raw);
  a.normalised = normalise_table(a.resampled, config.exclude);

  auto attrs = pca_attributes(a.normalised, config);
  if (attrs.size() < 2) {
    throw Error(ErrorKind::Data, "pca", "fewer than 2 attributes available for PCA");
  }
  a.initial_pca = jacobi_eigen(covariance(a.normalised, attrs));

  auto candidates = find_merge_candidates(a.initial_pca, config.merge_threshold, a.normalised);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& x, const auto& y) { return x.similarity > y.similarity; });
  std::set<std::string> consumed;
  for (auto& c : candidates) {
    MergeDecision d{c, false, {}};
    const bool free = !consumed.contains(c.first) && !consumed.contains(c.second);
    const bool significant_ok = !config.merge_min_p || c.p_value > *config.merge_min_p;
    if (free && significant_ok) {
      d.merged = true;
      d.merged_name = merged_name(c.first, c.second);
      if (d.merged_name != c.first && d.merged_name != c.second &&
          a.normalised.columns.contains(d.merged_name)) {
        d.merged_name = c.first + "+" + c.second;
      }
      a.normalised = merge_in_table(std::move(a.normalised), c.first, c.second, d.merged_name);
      consumed.insert(c.first);
      consumed.insert(c.second);
    }
    a.merges.push_back(std::move(d));
  }

  attrs = pca_attributes(a.normalised, config);
  if (attrs.size() >= 2) {
    a.pca = a.merges.empty() ? a.initial_pca : jacobi_eigen(covariance(a.normalised, attrs));
  } else {
    throw Error(ErrorKind::Data, "pca", "fewer than 2 attributes left after merging");
  }
  a.ranking = variability_scores(a.pca, config.components, config.score_mode);
  a.categories = category_ranking(config.weights);
  if (!config.antigen.empty()) {
    a.assignment = manual_assignment(config, a.normalised);
    a.manual_assignment = true;
  } else {
    a.assignment = assign_categories(a.ranking, a.categories);
  }
  return a;
}

RunResult run_pipeline(const RunConfig& config) {
  RunResult r;
  r.analysis = analyse(config);
  const auto& table = r.analysis.normalised;

  r.f_max = config.effective_f_max();
  r.delta = config.effective_delta();
  r.streams = build_streams(table, r.analysis.assignment, config.f_min, r.f_max);
  r.kalpha = run(r.streams, config.population, r.delta, config.weights);

  SegmentMap map;
  if (!config.boundaries.empty()) {
    map = SegmentMap(config.boundaries, table.rows());
  } else if (!config.marker_column.empty()) {
    map = detect_segments(table.columns.column(config.marker_column, "ingest"), config.segments);
  } else {
    throw Error(ErrorKind::Config, "config",
                "segmentation needs either boundaries or a marker column");
  }
  auto labels = config.labels;
  if (labels.empty()) {
    if (map.segment_count() != 7) {
      throw Error(ErrorKind::Config, "config",
                  "labels are required unless there are exactly 7 segments");
    }
    labels = driving_route_labels();
  }
  r.segments = apply_labels(std::move(map), std::move(labels));

  auto thresholds = config.thresholds.empty() ? threshold_grid(r.kalpha, config.grid)
                                              : config.thresholds;
  r.roc = roc_curve(r.kalpha, r.segments, std::move(thresholds));
  return r;
}

void cmd_stats(const RunConfig& config, std::ostream& summary) {
  auto raw = load_input(config);
  auto resampled = resample_average(raw);
  std::vector<AttributeStats> raw_stats, res_stats;
  for (const auto& name : raw.columns.names) raw_stats.push_back(describe(raw.columns, name));
  for (const auto& name : resampled.columns.names) {
    res_stats.push_back(describe(resampled.columns, name));
  }
  const auto raw_csv = stats_csv(raw_stats);
  const auto res_csv = stats_csv(res_stats);
  write_atomic(config.out_dir / "stats_raw.csv", raw_csv);
  write_atomic(config.out_dir / "stats_resampled.csv", res_csv);
  summary << "raw samples: " << raw.timestamps.size() << "\n" << raw_csv
          << "resampled seconds: " << resampled.seconds.size() << "\n" << res_csv;
}

void cmd_analyse(const RunConfig& config, std::ostream& summary) {
  const auto a = analyse(config);
  write_analysis(a, config);
  write_atomic(config.out_dir / "normalised.csv", normalised_csv(a.normalised));
  describe_analysis(a, summary);
}

void cmd_run(const RunConfig& config, std::ostream& summary) {
  const auto r = run_pipeline(config);
  write_analysis(r.analysis, config);
  write_atomic(config.out_dir / "kalpha.csv", kalpha_csv(r.kalpha));
  write_atomic(config.out_dir / "roc.csv", roc_csv(r.roc));
  for (std::size_t i = 0; i < r.roc.thresholds.size(); ++i) {
    write_atomic(config.out_dir / ("segments_" + std::to_string(i) + ".csv"),
                 segments_csv(r.roc.thresholds[i]));
  }

  std::ostringstream os;
  describe_analysis(r.analysis, os);
  os << "population: " << config.population << "\n"
     << "delta: " << format_real(r.delta) << "\n"
     << "antigen frequency: [" << config.f_min << ", " << r.f_max << "]\n"
     << "seconds: " << r.analysis.normalised.rows() << "\n"
     << "segments:";
  for (std::size_t s = 0; s < r.segments.segment_count(); ++s) {
    os << " [" << r.segments.start(s) << "," << r.segments.end(s) << ")"
       << (r.segments.labels()[s] == Label::Anomalous ? "A" : "N");
  }
  os << "\n" << "threshold,tp_rate,fp_rate\n";
  for (const auto& t : r.roc.thresholds) {
    os << format_real(t.threshold) << "," << format_real(t.rates.tp) << ","
       << format_real(t.rates.fp) << "\n";
  }
  os << "auc: " << format_real(r.roc.curve.auc) << "\n";
  write_atomic(config.out_dir / "summary.txt", os.str());
  summary << os.str();
}

}  // namespace pcadca
