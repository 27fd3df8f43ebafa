// Command-line front end: analyze, validate-k, synth, report.
// Exit codes: 0 success, 1 data/validation failure, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tempoclust/corpus.hpp"
#include "tempoclust/error.hpp"
#include "tempoclust/features.hpp"
#include "tempoclust/kmeans.hpp"
#include "tempoclust/pipeline.hpp"
#include "tempoclust/report.hpp"
#include "tempoclust/rng.hpp"
#include "tempoclust/synth.hpp"
#include "tempoclust/validity.hpp"
#include "tempoclust/version.hpp"

namespace fs = std::filesystem;

namespace {

using namespace tempoclust;

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Corpus load_corpus_dir(const fs::path& dir) {
  for (const char* name : {"movements.csv", "recordings.csv", "bars.csv"}) {
    if (!fs::exists(dir / name)) {
      throw UsageError("missing corpus file '" + (dir / name).string() + "'");
    }
  }
  return parse_corpus(read_text_file(dir / "movements.csv"),
                      read_text_file(dir / "recordings.csv"),
                      read_text_file(dir / "bars.csv"));
}

// All content is rendered before anything is written, so a failed render
// leaves out_dir untouched; a failed write leaves a _FAILED sentinel.
void write_outputs(const fs::path& out_dir,
                   const std::vector<std::pair<std::string, std::string>>& files) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw DomainError("cannot create '" + out_dir.string() + "': " +
                      ec.message());
  }
  for (const auto& [name, content] : files) {
    std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) {
      std::ofstream sentinel(out_dir / "_FAILED",
                             std::ios::binary | std::ios::trunc);
      sentinel << "write failed: " << name << "\n";
      throw DomainError("write failed for '" + (out_dir / name).string() +
                        "'");
    }
  }
}

std::string safe_filename(const std::string& stem) {
  std::string out;
  for (char c : stem) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_';
    out += ok ? c : '_';
  }
  return out;
}

std::set<std::string> parse_formats(const std::string& spec) {
  std::set<std::string> formats;
  std::stringstream stream(spec);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    if (item != "text" && item != "json" && item != "csv" && item != "svg") {
      throw UsageError("unknown format '" + item +
                       "' (expected text, json, csv, svg)");
    }
    formats.insert(item);
  }
  if (formats.empty()) {
    throw UsageError("--formats must name at least one format");
  }
  return formats;
}

void check_palette(const std::string& palette) {
  if (palette != "default" && palette != "high-contrast") {
    throw UsageError("unknown palette '" + palette +
                     "' (expected default or high-contrast)");
  }
}

// Shared by analyze and report: render every requested artifact.
std::vector<std::pair<std::string, std::string>> render_outputs(
    const ReportBundle& bundle, const Corpus& corpus,
    const std::set<std::string>& formats, const std::string& palette) {
  std::vector<std::pair<std::string, std::string>> files;
  if (formats.count("json")) {
    files.emplace_back("report.json", emit_json(bundle));
  }
  if (formats.count("text")) {
    bool any_fast = false;
    bool any_slow = false;
    for (const MovementReport& report : bundle.movements) {
      (report.character == Character::fast ? any_fast : any_slow) = true;
    }
    if (any_fast) {
      files.emplace_back("tables_fast.txt",
                         emit_cluster_table(bundle.movements, Character::fast));
    }
    if (any_slow) {
      files.emplace_back("tables_slow.txt",
                         emit_cluster_table(bundle.movements, Character::slow));
    }
    if (!bundle.changes.empty()) {
      files.emplace_back("changes.txt",
                         emit_change_table(bundle.changes, bundle.correlation));
    }
  }
  if (formats.count("csv")) {
    files.emplace_back("clusters.csv", emit_clusters_csv(bundle.movements));
    files.emplace_back("changes.csv", emit_changes_csv(bundle.changes));
  }
  if (formats.count("svg")) {
    SvgOptions options;
    options.palette = palette;
    for (const MovementReport& report : bundle.movements) {
      files.emplace_back(safe_filename(report.movement_id) + ".svg",
                         emit_scatter_svg(report, corpus, options));
    }
  }
  return files;
}

struct AnalyzeArgs {
  std::string corpus_dir;
  std::string out_dir;
  int k_target = 3;
  int restarts = 100;
  std::uint64_t seed = 0;
  int split_year = 1970;
  double min_silhouette = 0.40;
  int min_cluster_size = 1;
  double silhouette_slack = 0.02;
  std::string formats = "text,json,csv,svg";
  int jobs = 0;
  std::string palette = "default";
};

int cmd_analyze(const AnalyzeArgs& args) {
  const std::set<std::string> formats = parse_formats(args.formats);
  check_palette(args.palette);
  if (args.k_target != 2 && args.k_target != 3) {
    throw UsageError("--k must be 2 or 3");
  }
  if (args.restarts < 1) {
    throw UsageError("--restarts must be at least 1");
  }

  const Corpus corpus = load_corpus_dir(args.corpus_dir);
  const ValidationReport validation = validate_corpus(corpus);
  for (const Finding& finding : validation.findings) {
    std::cerr << (finding.severity == Severity::error ? "error: " : "warning: ")
              << finding.location << ": " << finding.message << "\n";
  }
  if (validation.has_errors()) {
    std::cerr << "corpus validation failed with " << validation.error_count()
              << " error(s)\n";
    return 1;
  }

  PipelineConfig config;
  config.k_target = args.k_target;
  config.restarts = args.restarts;
  config.seed = args.seed;
  config.split_year = args.split_year;
  config.policy.min_silhouette = args.min_silhouette;
  config.policy.min_cluster_size = args.min_cluster_size;
  config.policy.silhouette_slack = args.silhouette_slack;
  config.jobs = args.jobs;

  const PipelineResult result = analyze_corpus(corpus, config);
  for (const std::string& movement_id : result.skipped_movements) {
    std::cerr << "warning: skipping '" << movement_id
              << "' (fewer than 4 recordings)\n";
  }
  for (const MovementReport& report : result.bundle.movements) {
    int n = 0;
    for (const LabeledCluster& cluster : report.clusters) n += cluster.n;
    std::printf("%s: k=%d n=%d dominant=%s share=%.1f%%",
                report.movement_id.c_str(), report.validity.supported_k, n,
                to_string(report.dominant_label),
                100.0 * report.dominant_share);
    if (!report.empty_labels.empty()) {
      std::printf(" empty=");
      bool first = true;
      for (Label label : report.empty_labels) {
        std::printf("%s%s", first ? "" : ",", to_string(label));
        first = false;
      }
    }
    std::printf("\n");
  }

  // Render from the canonical (parsed-back) bundle so a later `report` run
  // on report.json reproduces every artifact byte for byte.
  const ReportBundle canonical = parse_report_json(emit_json(result.bundle));
  write_outputs(args.out_dir,
                render_outputs(canonical, corpus, formats, args.palette));
  return 0;
}

struct ValidateKArgs {
  std::string corpus_dir;
  std::string out_dir;
  int k_min = 1;
  int k_max = 4;
  int restarts = 100;
  std::uint64_t seed = 0;
};

int cmd_validate_k(const ValidateKArgs& args) {
  if (args.restarts < 1) {
    throw UsageError("--restarts must be at least 1");
  }
  const Corpus corpus = load_corpus_dir(args.corpus_dir);
  std::size_t smallest = SIZE_MAX;
  for (const auto& [movement_id, movement] : corpus.movements) {
    smallest = std::min(smallest, corpus.recordings_of(movement_id).size());
  }
  if (corpus.movements.empty()) {
    throw DomainError("corpus has no movements");
  }
  if (args.k_min < 1 || args.k_min >= args.k_max ||
      static_cast<std::size_t>(args.k_max) > smallest) {
    throw UsageError("need 1 <= k-min < k-max <= smallest movement size (" +
                     std::to_string(smallest) + ")");
  }

  nlohmann::json movements_json = nlohmann::json::array();
  for (const auto& [movement_id, movement] : corpus.movements) {
    const StandardizedMatrix matrix =
        z_standardize(build_feature_matrix(corpus, movement_id));
    const std::vector<Point>& points = matrix.values;
    const std::map<int, double> wcss =
        wcss_curve(points, args.k_min, args.k_max, args.restarts, args.seed);
    std::map<int, double> sil;
    for (int k = std::max(2, args.k_min); k <= args.k_max; ++k) {
      const ClusterModel model =
          kmeans_fit(points, k, args.restarts, args.seed);
      sil[k] = silhouette(points, model.assignments).mean;
    }

    // Elbow: the interior k with the greatest drop-ratio of the WCSS curve.
    std::optional<int> elbow;
    double best_ratio = -1.0;
    for (int k = args.k_min + 1; k < args.k_max; ++k) {
      const double gain = wcss.at(k - 1) - wcss.at(k);
      const double next_gain = std::max(wcss.at(k) - wcss.at(k + 1), 1e-300);
      const double ratio = gain / next_gain;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        elbow = k;
      }
    }

    std::printf("%s\n", movement_id.c_str());
    for (int k = args.k_min; k <= args.k_max; ++k) {
      std::printf("  k=%d  wcss=%.6f", k, wcss.at(k));
      if (sil.count(k)) std::printf("  silhouette=%.4f", sil.at(k));
      std::printf("\n");
    }
    if (elbow) std::printf("  elbow at k=%d\n", *elbow);

    nlohmann::json m;
    m["movement_id"] = movement_id;
    nlohmann::json wcss_json;
    for (const auto& [k, v] : wcss) wcss_json[std::to_string(k)] = round_sig6(v);
    m["wcss_by_k"] = wcss_json;
    nlohmann::json sil_json;
    for (const auto& [k, v] : sil) sil_json[std::to_string(k)] = round_sig6(v);
    m["silhouette_by_k"] = sil_json;
    m["elbow_k"] = elbow ? nlohmann::json(*elbow) : nlohmann::json(nullptr);
    movements_json.push_back(m);
  }

  nlohmann::json root;
  root["k_min"] = args.k_min;
  root["k_max"] = args.k_max;
  root["seed"] = args.seed;
  root["restarts"] = args.restarts;
  root["movements"] = movements_json;
  write_outputs(args.out_dir, {{"validity.json", root.dump(2) + "\n"}});
  return 0;
}

struct SynthArgs {
  std::string spec_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

int cmd_synth(const SynthArgs& args) {
  if (!fs::exists(args.spec_path)) {
    throw UsageError("missing spec file '" + args.spec_path + "'");
  }
  std::vector<SynthSpec> specs;
  Corpus corpus;
  try {
    specs = load_synth_specs_json(read_text_file(args.spec_path));
    if (args.seed_given) {
      for (std::size_t i = 0; i < specs.size(); ++i) {
        specs[i].seed = split_seed(args.seed, i);
      }
    }
    corpus = synth_corpus(specs);
  } catch (const ParseError& e) {
    // Malformed spec files are usage errors, like malformed flags.
    throw UsageError(e.what());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const CorpusText text = corpus_to_csv(corpus);
  write_outputs(args.out_dir, {{"movements.csv", text.movements_csv},
                               {"recordings.csv", text.recordings_csv},
                               {"bars.csv", text.bars_csv}});
  std::printf("synthesized %zu movement(s), %zu recording(s)\n",
              corpus.movements.size(), corpus.recordings.size());
  return 0;
}

struct ReportArgs {
  std::string report_path;
  std::string corpus_dir;
  std::string out_dir;
  std::string formats = "text,csv,svg";
  std::string palette = "default";
};

int cmd_report(const ReportArgs& args) {
  const std::set<std::string> formats = parse_formats(args.formats);
  check_palette(args.palette);
  if (!fs::exists(args.report_path)) {
    throw UsageError("missing report file '" + args.report_path + "'");
  }
  const ReportBundle bundle =
      parse_report_json(read_text_file(args.report_path));
  const Corpus corpus = load_corpus_dir(args.corpus_dir);
  write_outputs(args.out_dir,
                render_outputs(bundle, corpus, formats, args.palette));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tempo-tradition corpus analysis toolkit"};
  app.set_version_flag("--version", tempoclust::kVersion);
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Cluster every movement and emit the full report");
  analyze->add_option("--corpus", analyze_args.corpus_dir,
                      "Directory with movements.csv, recordings.csv, bars.csv")
      ->required();
  analyze->add_option("--out", analyze_args.out_dir, "Output directory")
      ->required();
  analyze->add_option("--k", analyze_args.k_target, "Target cluster count (2 or 3)");
  analyze->add_option("--restarts", analyze_args.restarts, "k-means restarts");
  analyze->add_option("--seed", analyze_args.seed, "Master RNG seed");
  analyze->add_option("--split-year", analyze_args.split_year,
                      "Early/late aggregate split year");
  analyze->add_option("--min-silhouette", analyze_args.min_silhouette,
                      "Minimum mean silhouette for three-way support");
  analyze->add_option("--min-cluster-size", analyze_args.min_cluster_size,
                      "Minimum k=3 cluster size for three-way support");
  analyze->add_option("--silhouette-slack", analyze_args.silhouette_slack,
                      "Allowed silhouette drop from k=2 to k=3");
  analyze->add_option("--formats", analyze_args.formats,
                      "Comma-separated subset of text,json,csv,svg");
  analyze->add_option("--jobs", analyze_args.jobs,
                      "Worker threads (0 = all processors)");
  analyze->add_option("--palette", analyze_args.palette,
                      "SVG palette: default or high-contrast");

  ValidateKArgs validate_args;
  CLI::App* validate = app.add_subcommand(
      "validate-k", "Print WCSS and silhouette curves over a k range");
  validate->add_option("--corpus", validate_args.corpus_dir,
                       "Directory with the three corpus CSVs")
      ->required();
  validate->add_option("--out", validate_args.out_dir, "Output directory")
      ->required();
  validate->add_option("--k-min", validate_args.k_min, "Smallest k");
  validate->add_option("--k-max", validate_args.k_max, "Largest k");
  validate->add_option("--restarts", validate_args.restarts, "k-means restarts");
  validate->add_option("--seed", validate_args.seed, "Master RNG seed");

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand(
      "synth", "Materialize a cluster-spec JSON into corpus CSVs");
  synth->add_option("--spec", synth_args.spec_path, "Spec JSON path")
      ->required();
  synth->add_option("--out", synth_args.out_dir, "Output directory")
      ->required();
  CLI::Option* seed_option =
      synth->add_option("--seed", synth_args.seed,
                        "Override per-movement seeds from this master seed");

  ReportArgs report_args;
  CLI::App* report = app.add_subcommand(
      "report", "Re-emit tables, CSVs, and SVGs from a report.json");
  report->add_option("--report", report_args.report_path, "report.json path")
      ->required();
  report->add_option("--corpus", report_args.corpus_dir,
                     "Corpus directory the report was computed from")
      ->required();
  report->add_option("--out", report_args.out_dir, "Output directory")
      ->required();
  report->add_option("--formats", report_args.formats,
                     "Comma-separated subset of text,json,csv,svg");
  report->add_option("--palette", report_args.palette,
                     "SVG palette: default or high-contrast");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(analyze_args);
    if (validate->parsed()) return cmd_validate_k(validate_args);
    if (synth->parsed()) {
      synth_args.seed_given = seed_option->count() > 0;
      return cmd_synth(synth_args);
    }
    if (report->parsed()) return cmd_report(report_args);
    std::cerr << app.help();
    return 2;
  } catch (const tempoclust::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
