#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "pcadca/config.hpp"
#include "pcadca/error.hpp"
#include "pcadca/pipeline.hpp"
#include "pcadca/report.hpp"

using namespace pcadca;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = PCADCA_SOURCE_DIR;

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("pcadca_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

RunConfig fixture_config(const fs::path& out) {
  RunConfig c;
  apply_config_file(c, kSource / "data" / "fixture.conf");
  c.input = kSource / "data" / "fixture.csv";
  c.out_dir = out;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("key=value text and overrides") {
    RunConfig c;
    apply_config_text(c, R"(
# comment
input = data.csv
exclude = a, b
population = 50
delta=0.2
weights-k = 1,1,-1
thresholds = -2,-1.5,0
labels = normal,anomalous
score-mode = pc1
merge-min-p = 0.05
)");
    CHECK(c.input == "data.csv");
    CHECK(c.exclude == std::vector<std::string>{"a", "b"});
    CHECK(c.population == 50);
    CHECK(*c.delta == 0.2);
    CHECK(c.weights.k == std::array<double, 3>{1, 1, -1});
    CHECK(c.thresholds == std::vector<double>{-2, -1.5, 0});
    CHECK(c.labels == std::vector<Label>{Label::Normal, Label::Anomalous});
    CHECK(c.score_mode == ScoreMode::Pc1);
    CHECK(*c.merge_min_p == 0.05);
    CHECK(c.effective_f_max() == 50);  // clamped to the population

    apply_setting(c, "population", "100");
    CHECK(c.population == 100);
    CHECK(c.effective_delta() == 0.2);
    c.delta.reset();
    CHECK(c.effective_delta() == doctest::Approx(0.15));
    CHECK_NOTHROW(c.validate());
  }

  TEST_CASE("config errors") {
    RunConfig c;
    CHECK_THROWS_WITH_AS(apply_setting(c, "bogus", "1"), doctest::Contains("unknown key"), Error);
    CHECK_THROWS_AS(apply_setting(c, "population", "ten"), Error);
    CHECK_THROWS_AS(apply_setting(c, "weights-csm", "1,2"), Error);
    CHECK_THROWS_AS(apply_setting(c, "score-mode", "loadings"), Error);
    CHECK_THROWS_AS(apply_config_text(c, "no equals sign"), Error);

    RunConfig bad;
    bad.f_min = 100;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = RunConfig{};
    bad.boundaries = {5, 3};
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = RunConfig{};
    bad.antigen = "x";
    CHECK_THROWS_AS(bad.validate(), Error);
    try {
      bad.validate();
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Config);
    }
  }
}

TEST_SUITE("pipeline") {
  TEST_CASE("merged_name") {
    CHECK(merged_name("foot GSR", "hand GSR") == "GSR");
    CHECK(merged_name("gsr_foot", "gsr_hand") == "gsr_foot+gsr_hand");
    CHECK(merged_name("hr", "xhr") == "hr+xhr");
  }

  TEST_CASE("format_real and write_atomic") {
    CHECK(format_real(0.15) == "0.15");
    CHECK(format_real(-0.0) == "0");
    CHECK(format_real(2.0 / 3.0) == "0.666667");
    const auto dir = scratch("atomic");
    write_atomic(dir / "sub" / "x.csv", "a\n");
    CHECK(slurp(dir / "sub" / "x.csv") == "a\n");
    CHECK_FALSE(fs::exists(dir / "sub" / "x.csv.tmp"));
  }

  TEST_CASE("analyse the fixture") {
    const auto a = analyse(fixture_config(scratch("analyse")));
    CHECK(a.ranking.attributes == std::vector<std::string>{"emg", "gsr", "hr", "ecg", "resp"});
    CHECK(a.merges.empty());
    CHECK(a.assignment.antigen == "emg");
    CHECK(a.assignment.attributes(Category::Safe) == std::vector<std::string>{"gsr"});
    CHECK(a.assignment.attributes(Category::Pamp) == std::vector<std::string>{"hr", "ecg"});
    CHECK(a.assignment.attributes(Category::Danger) == std::vector<std::string>{"resp"});
    CHECK(a.normalised.columns.contains("marker"));
    CHECK(std::find(a.pca.attributes.begin(), a.pca.attributes.end(), "marker") ==
          a.pca.attributes.end());
  }

  TEST_CASE("duplicated attribute yields one merge") {
    const auto dir = scratch("dup");
    const auto src = slurp(kSource / "data" / "fixture.csv");
    std::istringstream in(src);
    std::ofstream out(dir / "dup.csv");
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      // duplicate the hr column (4th field) as "hr copy"
      std::vector<std::string> f;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) f.push_back(cell);
      out << line << "," << (header ? std::string("hr copy") : f[3]) << "\n";
      header = false;
    }
    out.close();
    auto c = fixture_config(dir);
    c.input = dir / "dup.csv";
    const auto a = analyse(c);
    REQUIRE(a.merges.size() == 1);
    CHECK(a.merges[0].merged);
    CHECK(a.merges[0].candidate.similarity == doctest::Approx(1.0));
    CHECK(a.merges[0].merged_name == "hr+hr copy");
    CHECK(a.ranking.attributes.size() == 5);

    cmd_analyse(c, std::cout);
    const auto merges = slurp(dir / "merges.csv");
    CHECK(std::count(merges.begin(), merges.end(), '\n') == 2);

    // strict mode: identical columns give p = 1, which passes any gate below 1
    c.merge_min_p = 0.05;
    CHECK(analyse(c).merges[0].merged);
  }

  TEST_CASE("dominant-variance attribute becomes the antigen") {
    const auto dir = scratch("dominant");
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    std::ofstream out(dir / "d.csv");
    out << "time,a,b,c,d,e\n";
    for (int s = 0; s < 200; ++s) {
      // c is two-valued (variance near 0.25 after scaling); the others are
      // sums of uniforms concentrated around the middle of their range
      out << s * 1000 << "," << u(rng) + u(rng) + u(rng) << "," << u(rng) + u(rng) + u(rng) << ","
          << (s % 2) << "," << u(rng) + u(rng) + u(rng) << "," << u(rng) + u(rng) + u(rng) << "\n";
    }
    out.close();
    RunConfig c;
    c.input = dir / "d.csv";
    c.out_dir = dir;
    c.merge_threshold = 1.0;
    const auto a = analyse(c);
    CHECK(a.assignment.antigen == "c");
  }

  TEST_CASE("analyse error paths") {
    const auto dir = scratch("errors");
    {
      std::ofstream out(dir / "flat.csv");
      out << "time,a,b,c,d,e\n0,1,2,3,4,5\n1000,1,3,4,5,6\n2000,1,4,3,2,1\n";
    }
    RunConfig c;
    c.input = dir / "flat.csv";
    c.out_dir = dir;
    CHECK_THROWS_WITH_AS(analyse(c), doctest::Contains("a"), Error);
    c.exclude = {"a", "b"};
    c.merge_threshold = 1.0;
    CHECK_THROWS_WITH_AS(analyse(c), doctest::Contains("at least 4"), Error);
    c.exclude = {"zz"};
    CHECK_THROWS_AS(analyse(c), Error);
  }

  TEST_CASE("cmd_run on the fixture") {
    const auto dir = scratch("run");
    const auto c = fixture_config(dir);
    std::ostringstream summary;
    cmd_run(c, summary);
    const auto r = run_pipeline(c);
    CHECK(r.roc.curve.auc >= 0.9);
    CHECK(r.segments.boundaries() == std::vector<std::size_t>{100, 200, 300, 400, 500, 600});
    CHECK(r.kalpha.size() == 700);

    // summary pairs equal the ROC rows
    const auto roc = slurp(dir / "roc.csv");
    std::istringstream rows(roc);
    std::string line;
    std::getline(rows, line);
    while (std::getline(rows, line)) {
      if (line.starts_with("#")) {
        CHECK(line == "# auc=" + format_real(r.roc.curve.auc));
        continue;
      }
      CHECK(summary.str().find("\n" + line + "\n") != std::string::npos);
    }
    CHECK(fs::exists(dir / "kalpha.csv"));
    CHECK(fs::exists(dir / "segments_0.csv"));
    CHECK(fs::exists(dir / "summary.txt"));
    CHECK(slurp(dir / "kalpha.csv").starts_with("type,seconds,k_alpha,presented_count\n"));
    CHECK(slurp(dir / "segments_0.csv").starts_with("segment,start,end,true_label,L,predicted_label\n"));
  }

  TEST_CASE("explicit boundaries and manual mapping") {
    auto c = fixture_config(scratch("manual"));
    c.marker_column.clear();
    c.exclude = {"marker"};
    c.boundaries = {100, 200, 300, 400, 500, 600};
    c.antigen = "emg";
    c.pamp = {"hr"};
    c.danger = {"resp"};
    c.safe = {"gsr"};
    c.thresholds = {-2, -1.5, -1, -0.5, 0};
    const auto r = run_pipeline(c);
    CHECK(r.analysis.manual_assignment);
    CHECK(r.roc.thresholds.size() == 5);
    CHECK(r.roc.thresholds.front().threshold == -2);

    c.boundaries.clear();
    CHECK_THROWS_AS(run_pipeline(c), Error);
  }
}
