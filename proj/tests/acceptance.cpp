// Acceptance gate: runs every release criterion and prints one PASS/FAIL
// line per criterion. Exits nonzero when anything fails.
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tempoclust/corpus.hpp"
#include "tempoclust/features.hpp"
#include "tempoclust/kmeans.hpp"
#include "tempoclust/pipeline.hpp"
#include "tempoclust/regress.hpp"
#include "tempoclust/report.hpp"
#include "tempoclust/rng.hpp"
#include "tempoclust/synth.hpp"
#include "tempoclust/traditions.hpp"

#include "json.hpp"

#ifndef TEMPOCLUST_CLI_PATH
#error "TEMPOCLUST_CLI_PATH must be defined by the build"
#endif
#ifndef TEMPOCLUST_DATA_DIR
#error "TEMPOCLUST_DATA_DIR must be defined by the build"
#endif

using namespace tempoclust;
namespace fs = std::filesystem;

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

bool close_rel(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw DomainError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// ---- published table data -------------------------------------------------

struct PublishedRow {
  Label label;
  int n = 0;
  double mean_bpm = 0.0;
  bool has_range = false;
  double range_min = 0.0, range_max = 0.0;
};

struct PublishedMovement {
  std::string movement_id;
  std::string sonata_label;
  std::string movement_name;
  Character character = Character::fast;
  std::uint64_t synth_seed = 0;
  std::vector<PublishedRow> rows;
  double tempo_pct = 0.0;
  double duration_pct = 0.0;
};

struct PublishedTables {
  int year_min = 1935;
  int year_max = 2005;
  std::vector<PublishedMovement> movements;
};

PublishedTables load_published_tables() {
  const fs::path path = fs::path(TEMPOCLUST_DATA_DIR) / "published_tables.json";
  const nlohmann::json doc = nlohmann::json::parse(read_file(path));
  PublishedTables tables;
  tables.year_min = doc.at("year_min").get<int>();
  tables.year_max = doc.at("year_max").get<int>();
  for (const nlohmann::json& m : doc.at("movements")) {
    PublishedMovement movement;
    movement.movement_id = m.at("movement_id").get<std::string>();
    movement.sonata_label = m.at("sonata_label").get<std::string>();
    movement.movement_name = m.at("movement_name").get<std::string>();
    movement.character =
        character_from_string(m.at("character").get<std::string>());
    movement.synth_seed = m.at("synth_seed").get<std::uint64_t>();
    for (const nlohmann::json& r : m.at("rows")) {
      PublishedRow row;
      row.label = label_from_string(r.at("label").get<std::string>());
      row.n = r.at("n").get<int>();
      if (!r.at("mean_bpm").is_null()) {
        row.mean_bpm = r.at("mean_bpm").get<double>();
      }
      if (!r.at("range").is_null()) {
        row.has_range = true;
        row.range_min = r.at("range").at(0).get<double>();
        row.range_max = r.at("range").at(1).get<double>();
      }
      movement.rows.push_back(row);
    }
    movement.tempo_pct = m.at("change").at("tempo_pct").get<double>();
    movement.duration_pct = m.at("change").at("duration_pct").get<double>();
    tables.movements.push_back(std::move(movement));
  }
  return tables;
}

SynthSpec spec_for(const PublishedMovement& pub, int year_min, int year_max) {
  std::vector<TableRow> rows;
  for (const PublishedRow& r : pub.rows) {
    rows.push_back({to_string(r.label), r.n, r.mean_bpm, r.has_range,
                    r.range_min, r.range_max});
  }
  SynthSpec spec = spec_from_table_rows(pub.movement_id, rows);
  spec.sonata_label = pub.sonata_label;
  spec.movement_name = pub.movement_name;
  spec.character = pub.character;
  spec.feature_spec = pub.character == Character::slow
                          ? FeatureSpecKind::mean_and_cv
                          : FeatureSpecKind::mean_only;
  spec.seed = pub.synth_seed;
  for (SynthCluster& cluster : spec.clusters) {
    cluster.year_min = year_min;
    cluster.year_max = year_max;
  }
  return spec;
}

Corpus reference_corpus(const PublishedTables& tables) {
  std::vector<SynthSpec> specs;
  for (const PublishedMovement& pub : tables.movements) {
    specs.push_back(spec_for(pub, tables.year_min, tables.year_max));
  }
  return synth_corpus(specs);
}

// ---- association fixtures ---------------------------------------------------

// Builds a corpus plus one report realizing the given label x value counts,
// so background_association sees exactly that table.
struct AssociationFixture {
  Corpus corpus;
  MovementReport report;
};

AssociationFixture association_fixture(
    const std::vector<std::vector<int>>& counts,
    const std::vector<std::string>& values) {
  const std::vector<Label> labels = {Label::slow, Label::mid, Label::fast};
  std::string recordings =
      "recording_id,performer,year,movement_id,background.cat\n";
  std::string bars = "recording_id,bar_index,bpm\n";
  AssociationFixture fx;
  fx.report.movement_id = "m";
  int serial = 0;
  for (std::size_t row = 0; row < counts.size(); ++row) {
    LabeledCluster cluster;
    cluster.label = labels[row];
    for (std::size_t col = 0; col < counts[row].size(); ++col) {
      for (int i = 0; i < counts[row][col]; ++i) {
        const std::string id = "r" + std::to_string(serial++);
        recordings += id + ",p,1960,m," + values[col] + "\n";
        bars += id + ",0,100\n";
        cluster.member_ids.push_back(id);
      }
    }
    cluster.n = static_cast<int>(cluster.member_ids.size());
    fx.report.clusters.push_back(std::move(cluster));
  }
  fx.corpus = parse_corpus(
      "movement_id,sonata_label,movement_name,character,beats_per_bar,feature_spec\n"
      "m,Op. 1,Allegro,fast,2,mean_only\n",
      recordings, bars);
  return fx;
}

// ---- criteria ---------------------------------------------------------------

bool criterion_1(std::string* detail) {
  const auto start = std::chrono::steady_clock::now();
  SplitMix64 rng(20250818);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int dims = trial % 2 == 0 ? 1 : 2;
    const int k = 2 + static_cast<int>(rng.next_below(2));
    const int max_n = dims == 1 ? 10 : 8;
    const int n =
        k + static_cast<int>(rng.next_below(
                static_cast<std::uint64_t>(max_n - k + 1)));
    std::vector<Point> points;
    for (int i = 0; i < n; ++i) {
      Point p(dims);
      for (int d = 0; d < dims; ++d) p[d] = 10.0 * rng.next_gaussian();
      points.push_back(std::move(p));
    }
    const ClusterModel model = kmeans_fit(points, k, 100, rng.next());
    const double best = oracles::exhaustive_best_inertia(points, k);
    const double gap = std::fabs(model.inertia - best);
    worst = std::max(worst, gap / std::max(1.0, best));
    if (gap > 1e-9 * std::max(1.0, best)) {
      *detail = "restarted fit missed the exhaustive optimum (" +
                std::to_string(model.inertia) + " vs " + std::to_string(best) +
                ")";
      return false;
    }
  }
  const double seconds = elapsed_seconds(start);
  if (seconds >= 10.0) {
    *detail = "took " + std::to_string(seconds) + "s (limit 10s)";
    return false;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "200 instances optimal, worst rel gap %.2e, %.2fs", worst,
                seconds);
  *detail = buf;
  return true;
}

bool criterion_2(std::string* detail) {
  SplitMix64 rng(77);
  int steps = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int dims = 1 + static_cast<int>(rng.next_below(2));
    const int k = 2 + static_cast<int>(rng.next_below(2));
    const int n = k + static_cast<int>(rng.next_below(30));
    std::vector<Point> points;
    for (int i = 0; i < n; ++i) {
      Point p(dims);
      for (int d = 0; d < dims; ++d) p[d] = 5.0 * rng.next_gaussian();
      points.push_back(std::move(p));
    }
    SplitMix64 init_rng(rng.next());
    const Descent descent =
        lloyd_descent(points, kmeans_pp_init(points, k, init_rng));
    for (std::size_t i = 1; i < descent.trace.size(); ++i) {
      ++steps;
      if (descent.trace[i] > descent.trace[i - 1]) {
        *detail = "inertia rose from " + std::to_string(descent.trace[i - 1]) +
                  " to " + std::to_string(descent.trace[i]);
        return false;
      }
    }
  }
  *detail = "1000 descents, " + std::to_string(steps) +
            " iterations, zero increases";
  return true;
}

bool criterion_3(std::string* detail) {
  SplitMix64 rng(4242);
  double worst_mean = 0.0, worst_sd = 0.0;
  int columns_checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    FeatureMatrix matrix;
    matrix.movement_id = "m";
    const int n = 2 + static_cast<int>(rng.next_below(39));
    const int cols = 1 + static_cast<int>(rng.next_below(2));
    const double scale = std::exp(6.0 * (rng.next_double() - 0.5));
    const double shift = 200.0 * (rng.next_double() - 0.5);
    matrix.columns.assign(cols, "c");
    for (int i = 0; i < n; ++i) {
      matrix.row_ids.push_back("r" + std::to_string(i));
      std::vector<double> row(cols);
      for (int c = 0; c < cols; ++c) {
        row[c] = shift + scale * rng.next_gaussian();
      }
      matrix.values.push_back(std::move(row));
    }
    const StandardizedMatrix standardized = z_standardize(matrix);
    for (int c = 0; c < cols; ++c) {
      if (standardized.column_sds[c] == 0.0) continue;  // degenerate
      double mean = 0.0;
      for (int i = 0; i < n; ++i) mean += standardized.values[i][c];
      mean /= n;
      double ss = 0.0;
      for (int i = 0; i < n; ++i) {
        ss += (standardized.values[i][c] - mean) *
              (standardized.values[i][c] - mean);
      }
      const double sd = std::sqrt(ss / (n - 1));
      worst_mean = std::max(worst_mean, std::fabs(mean));
      worst_sd = std::max(worst_sd, std::fabs(sd - 1.0));
      ++columns_checked;
      if (std::fabs(mean) > 1e-12 || std::fabs(sd - 1.0) > 1e-12) {
        *detail = "column mean " + std::to_string(mean) + ", sd " +
                  std::to_string(sd);
        return false;
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "%d columns, worst |mean| %.2e, worst |sd-1| %.2e",
                columns_checked, worst_mean, worst_sd);
  *detail = buf;
  return true;
}

bool criterion_4(std::string* detail) {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 3 + static_cast<int>(rng.next_below(48));
    std::vector<double> x, y;
    const double slope = 4.0 * (rng.next_double() - 0.5);
    const double intercept = 100.0 * (rng.next_double() - 0.5);
    for (int i = 0; i < n; ++i) {
      const double xi = 1930.0 + 80.0 * rng.next_double();
      x.push_back(xi);
      y.push_back(intercept + slope * xi + 3.0 * rng.next_gaussian());
    }
    const RegressionFit fit = ols_fit(x, y);
    const oracles::OlsReference ref = oracles::ols_reference(x, y);
    if (!close_rel(fit.slope, ref.slope, 1e-9) ||
        !close_rel(fit.intercept, ref.intercept, 1e-9) ||
        !close_rel(fit.slope_se, ref.slope_se, 1e-9)) {
      *detail = "fit diverged from the normal-equations oracle at trial " +
                std::to_string(trial);
      return false;
    }
    const double r = pearson_r(x, y);
    if (std::fabs(fit.r_squared - r * r) > 1e-12) {
      *detail = "R^2 != r^2 (diff " + std::to_string(fit.r_squared - r * r) +
                ")";
      return false;
    }
  }
  *detail = "500 instances within 1e-9; R^2 = r^2 to 1e-12";
  return true;
}

bool criterion_5(std::string* detail) {
  const std::vector<int> dfs = [] {
    std::vector<int> v;
    for (int df = 1; df <= 30; ++df) v.push_back(df);
    v.push_back(50);
    v.push_back(100);
    v.push_back(200);
    return v;
  }();
  double worst = 0.0;
  for (int df : dfs) {
    for (int i = -20; i <= 20; ++i) {
      const double t = 0.25 * i;
      const double got = t_cdf(t, df);
      const double want = oracles::t_cdf_quadrature(t, df);
      worst = std::max(worst, std::fabs(got - want));
      if (std::fabs(got - want) > 1e-8) {
        *detail = "df=" + std::to_string(df) + " t=" + std::to_string(t) +
                  " err=" + std::to_string(std::fabs(got - want));
        return false;
      }
    }
  }
  double worst_cauchy = 0.0;
  for (int i = -64; i <= 64; ++i) {
    const double t = 0.125 * i;
    const double want = 0.5 + std::atan(t) / M_PI;
    worst_cauchy = std::max(worst_cauchy, std::fabs(t_cdf(t, 1) - want));
    if (worst_cauchy > 1e-12) {
      *detail = "Cauchy mismatch at t=" + std::to_string(t);
      return false;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "grid max err %.2e (tol 1e-8); Cauchy max err %.2e", worst,
                worst_cauchy);
  *detail = buf;
  return true;
}

bool criterion_6(std::string* detail) {
  const auto start = std::chrono::steady_clock::now();
  const PublishedTables tables = load_published_tables();
  const Corpus corpus = reference_corpus(tables);
  PipelineConfig config;  // defaults: k_target 3, restarts 100, seed 0
  const PipelineResult result = analyze_corpus(corpus, config);
  if (!result.skipped_movements.empty()) {
    *detail = "pipeline skipped " + result.skipped_movements.front();
    return false;
  }
  std::map<std::string, const MovementReport*> by_id;
  for (const MovementReport& report : result.bundle.movements) {
    by_id[report.movement_id] = &report;
  }

  double worst_dev = 0.0;
  int mid_dominant_in_band = 0;
  for (const PublishedMovement& pub : tables.movements) {
    const auto it = by_id.find(pub.movement_id);
    if (it == by_id.end()) {
      *detail = pub.movement_id + " missing from the analysis";
      return false;
    }
    const MovementReport& report = *it->second;
    int expected_k = 0;
    for (const PublishedRow& row : pub.rows) expected_k += row.n > 0;
    if (report.validity.supported_k != expected_k) {
      *detail = pub.movement_id + " supported_k " +
                std::to_string(report.validity.supported_k) + " != " +
                std::to_string(expected_k);
      return false;
    }
    for (const PublishedRow& row : pub.rows) {
      if (row.n == 0) {
        if (!report.empty_labels.count(row.label)) {
          *detail = pub.movement_id + " should report empty " +
                    to_string(row.label);
          return false;
        }
        continue;
      }
      bool found = false;
      for (const LabeledCluster& cluster : report.clusters) {
        if (cluster.label != row.label) continue;
        found = true;
        if (cluster.n != row.n) {
          *detail = pub.movement_id + " " + to_string(row.label) + " n=" +
                    std::to_string(cluster.n) + " != " + std::to_string(row.n);
          return false;
        }
        const double dev = std::fabs(cluster.mean_bpm - row.mean_bpm);
        worst_dev = std::max(worst_dev, dev);
        if (dev > 1.0) {
          *detail = pub.movement_id + " " + to_string(row.label) +
                    " centroid off by " + std::to_string(dev);
          return false;
        }
      }
      if (!found) {
        *detail = pub.movement_id + " lacks a " + to_string(row.label) +
                  " cluster";
        return false;
      }
    }
    // Dominance pattern implied by the published counts.
    if (report.dominant_label == Label::mid && report.dominant_share >= 0.5 &&
        report.dominant_share <= 0.8) {
      ++mid_dominant_in_band;
    }
  }
  if (mid_dominant_in_band != 7) {
    *detail = "expected 7 movements with a dominant mid cluster holding "
              "50-80% of recordings, got " +
              std::to_string(mid_dominant_in_band);
    return false;
  }
  if (by_id.at("op69_allegro_vivace")->dominant_label != Label::fast) {
    *detail = "op69_allegro_vivace should be fast-dominant";
    return false;
  }
  if (by_id.at("op102n1_allegro")->dominant_share >= 0.5) {
    *detail = "op102n1_allegro dominant share should sit below 50%";
    return false;
  }
  const double seconds = elapsed_seconds(start);
  if (seconds >= 5.0) {
    *detail = "took " + std::to_string(seconds) + "s (limit 5s)";
    return false;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "9 movements exact, worst centroid dev %.3f BPM, %.2fs",
                worst_dev, seconds);
  *detail = buf;
  return true;
}

bool criterion_7(std::string* detail) {
  // sd 2.0 calibrates expected R^2 to ~0.246 for slope -0.032 over 8
  // evenly spaced years in 1937-2004 (slope^2 * Sxx ~= 3.94). The seed
  // window is frozen; any fixed window is equally arbitrary.
  std::vector<double> slopes, r2s;
  for (std::uint64_t seed = 900; seed < 950; ++seed) {
    SynthSpec spec;
    spec.movement_id = "drift";
    spec.character = Character::fast;
    spec.bars_per_recording = 4;
    spec.clusters = {{"mid", 8, 83.1, 2.0, 1937, 2004, -0.032}};
    spec.seed = seed;
    const Corpus corpus = synth_corpus(spec);
    std::vector<double> years, means;
    for (const auto& [id, rec] : corpus.recordings) {
      years.push_back(static_cast<double>(rec.year));
      means.push_back(mean_bpm(rec.bar_bpm));
    }
    const RegressionFit fit = ols_fit(years, means);
    slopes.push_back(fit.slope);
    r2s.push_back(fit.r_squared);
  }
  const double med_slope = oracles::median_of(slopes);
  const double med_r2 = oracles::median_of(r2s);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "median slope %.4f (target -0.032 +/- 0.010), median R^2 %.3f "
                "(target 0.246 +/- 0.10)",
                med_slope, med_r2);
  *detail = buf;
  if (std::fabs(med_slope - (-0.032)) > 0.010) return false;
  if (std::fabs(med_r2 - 0.246) > 0.10) return false;
  return true;
}

bool criterion_8(std::string* detail) {
  const PublishedTables tables = load_published_tables();
  std::vector<double> tempo, duration;
  for (const PublishedMovement& pub : tables.movements) {
    tempo.push_back(pub.tempo_pct);
    duration.push_back(pub.duration_pct);
  }
  const double r = pearson_r(tempo, duration);
  char buf[96];
  std::snprintf(buf, sizeof buf, "|r| = %.4f over %zu movements",
                std::fabs(r), tempo.size());
  *detail = buf;
  return std::fabs(r) >= 0.96 && std::fabs(r) <= 1.0;
}

bool criterion_9(std::string* detail) {
  SplitMix64 rng(8);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    SynthSpec spec;
    spec.movement_id = "mov";
    spec.character = Character::fast;
    spec.bars_per_recording = 4 + static_cast<int>(rng.next_below(21));
    const double early = 40.0 + 120.0 * rng.next_double();
    const double late = 40.0 + 120.0 * rng.next_double();
    const int n_early = 1 + static_cast<int>(rng.next_below(8));
    const int n_late = 1 + static_cast<int>(rng.next_below(8));
    spec.clusters = {
        {"early", n_early, early, 0.0, 1935, 1960, 0.0},
        {"late", n_late, late, 0.0, 1980, 2005, 0.0},
    };
    const Corpus corpus = synth_corpus(spec);
    const AggregateChange change = aggregate_period_change(corpus, "mov", 1970);
    const double product = (1.0 + change.tempo_pct / 100.0) *
                           (1.0 + change.duration_pct / 100.0);
    worst = std::max(worst, std::fabs(product - 1.0));
    if (std::fabs(product - 1.0) > 1e-9) {
      *detail = "identity broke: product " + std::to_string(product);
      return false;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "50 corpora, worst |product-1| %.2e", worst);
  *detail = buf;
  return true;
}

bool criterion_10(std::string* detail) {
  const PublishedTables tables = load_published_tables();
  const Corpus corpus = reference_corpus(tables);
  const CorpusText csv = corpus_to_csv(corpus);

  const fs::path root =
      fs::temp_directory_path() /
      ("tempoclust_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const fs::path corpus_dir = root / "corpus";
  fs::create_directories(corpus_dir);
  std::ofstream(corpus_dir / "movements.csv") << csv.movements_csv;
  std::ofstream(corpus_dir / "recordings.csv") << csv.recordings_csv;
  std::ofstream(corpus_dir / "bars.csv") << csv.bars_csv;

  auto run = [&](const fs::path& out) {
    const std::string command = std::string(TEMPOCLUST_CLI_PATH) +
                                " analyze --corpus " + corpus_dir.string() +
                                " --out " + out.string() +
                                " --seed 0 > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) && WEXITSTATUS(status) == 0;
  };
  const fs::path out1 = root / "run1";
  const fs::path out2 = root / "run2";
  if (!run(out1) || !run(out2)) {
    *detail = "analyze run failed";
    return false;
  }
  int files = 0;
  if (read_file(out1 / "report.json") != read_file(out2 / "report.json")) {
    *detail = "report.json differs between runs";
    return false;
  }
  ++files;
  for (const PublishedMovement& pub : tables.movements) {
    const std::string name = pub.movement_id + ".svg";
    if (read_file(out1 / name) != read_file(out2 / name)) {
      *detail = name + " differs between runs";
      return false;
    }
    ++files;
  }
  fs::remove_all(root);
  *detail = "two runs byte-identical across " + std::to_string(files) +
            " files (report.json + 9 SVGs)";
  return true;
}

bool criterion_11(std::string* detail) {
  // Exact independence: proportional rows.
  {
    const AssociationFixture fx =
        association_fixture({{4, 8}, {2, 4}}, {"A", "B"});
    const AssociationResult result =
        background_association({fx.report}, fx.corpus, "cat");
    if (std::fabs(result.chi_square) > 1e-12 ||
        std::fabs(result.cramers_v) > 1e-12) {
      *detail = "independent table gave chi^2 " +
                std::to_string(result.chi_square);
      return false;
    }
  }
  // Perfect association.
  {
    const AssociationFixture fx =
        association_fixture({{7, 0}, {0, 5}}, {"A", "B"});
    const AssociationResult result =
        background_association({fx.report}, fx.corpus, "cat");
    if (std::fabs(result.cramers_v - 1.0) > 1e-12) {
      *detail = "perfect 2x2 gave V " + std::to_string(result.cramers_v);
      return false;
    }
  }
  // Random 3x3 tables against the expected-counts oracle.
  SplitMix64 rng(31);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<int>> counts(3, std::vector<int>(3));
    for (auto& row : counts) {
      for (int& cell : row) cell = 1 + static_cast<int>(rng.next_below(20));
    }
    const AssociationFixture fx = association_fixture(counts, {"A", "B", "C"});
    const AssociationResult result =
        background_association({fx.report}, fx.corpus, "cat");
    const double want = oracles::chi_square_reference(counts);
    worst = std::max(worst, std::fabs(result.chi_square - want));
    if (!close_rel(result.chi_square, want, 1e-9)) {
      *detail = "chi^2 " + std::to_string(result.chi_square) + " vs oracle " +
                std::to_string(want);
      return false;
    }
    if (result.df != 4) {
      *detail = "3x3 df " + std::to_string(result.df);
      return false;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "independence/perfect exact; 20 random 3x3, worst err %.2e",
                worst);
  *detail = buf;
  return true;
}

struct Criterion {
  int id;
  const char* name;
  bool (*run)(std::string*);
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "k-means reaches the exhaustive optimum", criterion_1},
      {2, "Lloyd inertia traces never increase", criterion_2},
      {3, "standardized columns have zero mean and unit sd", criterion_3},
      {4, "OLS matches the normal-equations oracle", criterion_4},
      {5, "t CDF matches quadrature and the Cauchy closed form", criterion_5},
      {6, "published cluster tables are reconstructed", criterion_6},
      {7, "drift slope and R^2 are recovered from noise", criterion_7},
      {8, "published tempo/duration changes correlate inversely", criterion_8},
      {9, "tempo and duration changes obey the reciprocal identity",
       criterion_9},
      {10, "CLI runs are byte-deterministic", criterion_10},
      {11, "association statistics match the contingency oracle",
       criterion_11},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::string detail;
    bool pass = false;
    try {
      pass = criterion.run(&detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL",
                criterion.id, criterion.name, detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
    failures += !pass;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
