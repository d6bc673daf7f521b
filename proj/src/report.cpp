#include "pcadca/report.hpp"

#include <cstdio>
#include <fstream>
#include <algorithm>
#include <map>

#include "pcadca/error.hpp"

namespace pcadca {

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::Data, "output", "cannot write '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorKind::Data, "output",
                "cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
  }
}

std::string stats_csv(std::span<const AttributeStats> stats) {
  std::string out = "name,min,max,median,mean,stdev\n";
  for (const auto& s : stats) {
    out += s.name + "," + format_real(s.min) + "," + format_real(s.max) + "," +
           format_real(s.median) + "," + format_real(s.mean) + "," + format_real(s.stdev) + "\n";
  }
  return out;
}

std::string normalised_csv(const NormalisedTable& table) {
  std::string out = "second";
  for (const auto& n : table.columns.names) out += "," + n;
  out += "\n";
  for (std::size_t r = 0; r < table.rows(); ++r) {
    out += std::to_string(table.seconds[r]);
    for (const auto& col : table.columns.data) out += "," + format_real(col[r]);
    out += "\n";
  }
  return out;
}

std::string loadings_csv(const PcaResult& pca, const VariabilityRanking& ranking) {
  std::map<std::string, std::size_t> rank_of;
  for (std::size_t i = 0; i < ranking.attributes.size(); ++i) rank_of[ranking.attributes[i]] = i;

  std::string out = "attribute";
  for (std::size_t j = 0; j < pca.order(); ++j) out += ",pc" + std::to_string(j + 1);
  out += ",score,rank\n";
  for (std::size_t i = 0; i < pca.order(); ++i) {
    const auto& name = pca.attributes[i];
    out += name;
    for (std::size_t j = 0; j < pca.order(); ++j) out += "," + format_real(pca.loading(i, j));
    const auto r = rank_of.at(name);
    out += "," + format_real(ranking.scores[r]) + "," + std::to_string(r + 1) + "\n";
  }
  return out;
}

std::string assignment_csv(const VariabilityRanking& ranking, const SignalAssignment& assignment) {
  auto role_of = [&](const std::string& name) -> std::string {
    if (name == assignment.antigen) return "antigen";
    for (Category c : kCategories) {
      const auto& list = assignment.attributes(c);
      if (std::find(list.begin(), list.end(), name) != list.end()) {
        return std::string(to_string(c));
      }
    }
    return "unused";
  };
  std::string out = "rank,attribute,score,role,inverted\n";
  for (std::size_t i = 0; i < ranking.attributes.size(); ++i) {
    const auto& name = ranking.attributes[i];
    out += std::to_string(i + 1) + "," + name + "," + format_real(ranking.scores[i]) + "," +
           role_of(name) + "," + (assignment.inverted.contains(name) ? "yes" : "no") + "\n";
  }
  return out;
}

std::string kalpha_csv(const KAlphaSeries& series) {
  std::string out = "type,seconds,k_alpha,presented_count\n";
  for (const auto& e : series) {
    out += std::to_string(e.type) + "," + std::to_string(e.type) + "," +
           format_real(e.k_alpha) + "," + std::to_string(e.presented_count) + "\n";
  }
  return out;
}

std::string roc_csv(const RocResult& roc) {
  std::string out = "threshold,tp_rate,fp_rate\n";
  for (const auto& t : roc.thresholds) {
    out += format_real(t.threshold) + "," + format_real(t.rates.tp) + "," +
           format_real(t.rates.fp) + "\n";
  }
  out += "# auc=" + format_real(roc.curve.auc) + "\n";
  return out;
}

std::string segments_csv(const ThresholdResult& result) {
  std::string out = "segment,start,end,true_label,L,predicted_label\n";
  for (const auto& p : result.predictions) {
    out += std::to_string(p.segment) + "," + std::to_string(p.start) + "," +
           std::to_string(p.end) + "," + std::string(to_string(p.truth)) + "," +
           format_real(p.l) + "," + std::string(to_string(p.predicted)) + "\n";
  }
  return out;
}

}  // namespace pcadca
