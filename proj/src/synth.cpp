#include "tempoclust/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "tempoclust/rng.hpp"

#include "json.hpp"

namespace tempoclust {

namespace {

void check_spec(const SynthSpec& spec) {
  if (spec.movement_id.empty()) {
    throw DomainError("synth spec requires a movement_id");
  }
  if (spec.beats_per_bar < 1) {
    throw DomainError("spec '" + spec.movement_id + "': beats_per_bar must be >= 1");
  }
  if (spec.bars_per_recording < 1) {
    throw DomainError("spec '" + spec.movement_id +
                      "': bars_per_recording must be >= 1");
  }
  if (!(spec.bar_noise_sd >= 0.0)) {
    throw DomainError("spec '" + spec.movement_id + "': bar_noise_sd must be >= 0");
  }
  if (spec.feature_spec == FeatureSpecKind::mean_and_cv &&
      spec.character != Character::slow) {
    throw DomainError("spec '" + spec.movement_id +
                      "': feature_spec mean_and_cv requires character slow");
  }
  int total = 0;
  for (const SynthCluster& c : spec.clusters) {
    if (c.n < 0) {
      throw DomainError("spec '" + spec.movement_id + "': cluster n must be >= 0");
    }
    total += c.n;
    if (c.n == 0) continue;
    if (!(c.mean_bpm > 0.0)) {
      throw DomainError("spec '" + spec.movement_id +
                        "': cluster mean_bpm must be positive");
    }
    if (!(c.sd_bpm >= 0.0)) {
      throw DomainError("spec '" + spec.movement_id +
                        "': cluster sd_bpm must be >= 0");
    }
    if (c.year_min > c.year_max) {
      throw DomainError("spec '" + spec.movement_id +
                        "': cluster year window is inverted");
    }
    if (!std::isfinite(c.slope_bpm_per_year)) {
      throw DomainError("spec '" + spec.movement_id +
                        "': cluster slope must be finite");
    }
  }
  if (total < 1) {
    throw DomainError("spec '" + spec.movement_id +
                      "' generates no recordings");
  }
}

int id_width(int total) {
  int width = 2;
  for (int v = 100; total >= v; v *= 10) ++width;
  return width;
}

}  // namespace

Corpus synth_corpus(const SynthSpec& spec) {
  return synth_corpus(std::vector<SynthSpec>{spec});
}

Corpus synth_corpus(const std::vector<SynthSpec>& specs) {
  Corpus corpus;
  std::set<std::string> seen;
  for (const SynthSpec& spec : specs) {
    check_spec(spec);
    if (!seen.insert(spec.movement_id).second) {
      throw DomainError("duplicate movement_id '" + spec.movement_id +
                        "' across specs");
    }

    Movement movement;
    movement.movement_id = spec.movement_id;
    movement.sonata_label =
        spec.sonata_label.empty() ? spec.movement_id : spec.sonata_label;
    movement.movement_name = spec.movement_name;
    movement.character = spec.character;
    movement.beats_per_bar = spec.beats_per_bar;
    movement.feature_spec = spec.feature_spec;
    corpus.movements.emplace(movement.movement_id, movement);

    int total = 0;
    for (const SynthCluster& c : spec.clusters) total += c.n;
    const int width = id_width(total);

    SplitMix64 rng(spec.seed);
    int serial = 0;
    char suffix[32];
    for (const SynthCluster& cluster : spec.clusters) {
      const double midpoint = 0.5 * (cluster.year_min + cluster.year_max);
      for (int i = 0; i < cluster.n; ++i) {
        const double span = cluster.year_max - cluster.year_min;
        const double y =
            cluster.n == 1
                ? midpoint
                : cluster.year_min + i * span / (cluster.n - 1);
        Recording rec;
        rec.year = static_cast<int>(std::llround(y));
        ++serial;
        std::snprintf(suffix, sizeof suffix, "%0*d", width, serial);
        rec.recording_id = spec.movement_id + "-" + suffix;
        rec.performer = "performer_" + std::string(suffix);
        rec.movement_id = spec.movement_id;

        double mean = cluster.mean_bpm +
                      cluster.slope_bpm_per_year * (rec.year - midpoint) +
                      cluster.sd_bpm * rng.next_gaussian();
        mean = std::max(mean, 1.0);
        rec.bar_bpm.reserve(spec.bars_per_recording);
        for (int b = 0; b < spec.bars_per_recording; ++b) {
          const double bpm =
              std::max(mean + spec.bar_noise_sd * rng.next_gaussian(), 1.0);
          rec.bar_bpm.push_back(bpm);
        }
        corpus.recordings.emplace(rec.recording_id, std::move(rec));
      }
    }
  }
  return corpus;
}

SynthSpec spec_from_table_rows(const std::string& movement_id,
                               const std::vector<TableRow>& rows,
                               double range_to_sd_divisor) {
  if (!(range_to_sd_divisor > 0.0)) {
    throw DomainError("range_to_sd_divisor must be positive");
  }
  SynthSpec spec;
  spec.movement_id = movement_id;
  spec.sonata_label = movement_id;
  for (const TableRow& row : rows) {
    if (row.n == 0) continue;  // published empty tradition
    SynthCluster cluster;
    cluster.label_hint = row.label_hint;
    cluster.n = row.n;
    cluster.mean_bpm = row.mean_bpm;
    if (row.has_range) {
      if (row.range_max < row.range_min) {
        throw DomainError("table row for '" + movement_id +
                          "' has an inverted range");
      }
      cluster.sd_bpm = (row.range_max - row.range_min) / range_to_sd_divisor;
    } else {
      cluster.sd_bpm = 0.0;  // dash row: no spread published
    }
    spec.clusters.push_back(cluster);
  }
  return spec;
}

namespace {

using nlohmann::json;

[[noreturn]] void spec_error(const std::string& path, const std::string& message) {
  throw ParseError("synth spec: " + path + ": " + message);
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) spec_error(path, "expected a number");
  return j.get<double>();
}

int require_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) spec_error(path, "expected an integer");
  return j.get<int>();
}

std::string require_string(const json& j, const std::string& path) {
  if (!j.is_string()) spec_error(path, "expected a string");
  return j.get<std::string>();
}

SynthCluster parse_cluster(const json& j, const std::string& path) {
  if (!j.is_object()) spec_error(path, "expected an object");
  SynthCluster cluster;
  for (const auto& [key, value] : j.items()) {
    const std::string kpath = path + "/" + key;
    if (key == "label_hint") {
      cluster.label_hint = require_string(value, kpath);
    } else if (key == "n") {
      cluster.n = require_int(value, kpath);
      if (cluster.n < 0) spec_error(kpath, "must be >= 0");
    } else if (key == "mean_bpm") {
      cluster.mean_bpm = require_number(value, kpath);
      if (!(cluster.mean_bpm > 0.0)) spec_error(kpath, "must be positive");
    } else if (key == "sd_bpm") {
      cluster.sd_bpm = require_number(value, kpath);
      if (!(cluster.sd_bpm >= 0.0)) spec_error(kpath, "must be >= 0");
    } else if (key == "year_min") {
      cluster.year_min = require_int(value, kpath);
    } else if (key == "year_max") {
      cluster.year_max = require_int(value, kpath);
    } else if (key == "slope_bpm_per_year") {
      cluster.slope_bpm_per_year = require_number(value, kpath);
    } else {
      spec_error(kpath, "unknown field");
    }
  }
  if (!j.count("n")) spec_error(path, "missing field 'n'");
  if (cluster.n > 0 && !j.count("mean_bpm")) {
    spec_error(path, "missing field 'mean_bpm'");
  }
  if (cluster.year_min > cluster.year_max) {
    spec_error(path, "year window is inverted");
  }
  return cluster;
}

SynthSpec parse_spec(const json& j, const std::string& path) {
  if (!j.is_object()) spec_error(path, "expected an object");
  SynthSpec spec;
  for (const auto& [key, value] : j.items()) {
    const std::string kpath = path + "/" + key;
    if (key == "movement_id") {
      spec.movement_id = require_string(value, kpath);
    } else if (key == "sonata_label") {
      spec.sonata_label = require_string(value, kpath);
    } else if (key == "movement_name") {
      spec.movement_name = require_string(value, kpath);
    } else if (key == "character") {
      try {
        spec.character = character_from_string(require_string(value, kpath));
      } catch (const ParseError& e) {
        spec_error(kpath, e.what());
      }
    } else if (key == "beats_per_bar") {
      spec.beats_per_bar = require_int(value, kpath);
      if (spec.beats_per_bar < 1) spec_error(kpath, "must be >= 1");
    } else if (key == "feature_spec") {
      try {
        spec.feature_spec =
            feature_spec_from_string(require_string(value, kpath));
      } catch (const ParseError& e) {
        spec_error(kpath, e.what());
      }
    } else if (key == "clusters") {
      if (!value.is_array() || value.empty()) {
        spec_error(kpath, "expected a non-empty array");
      }
      for (std::size_t i = 0; i < value.size(); ++i) {
        spec.clusters.push_back(
            parse_cluster(value[i], kpath + "/" + std::to_string(i)));
      }
    } else if (key == "bars_per_recording") {
      spec.bars_per_recording = require_int(value, kpath);
      if (spec.bars_per_recording < 1) spec_error(kpath, "must be >= 1");
    } else if (key == "bar_noise_sd") {
      spec.bar_noise_sd = require_number(value, kpath);
      if (!(spec.bar_noise_sd >= 0.0)) spec_error(kpath, "must be >= 0");
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !value.is_number_integer()) {
        spec_error(kpath, "expected an integer");
      }
      spec.seed = value.get<std::uint64_t>();
    } else {
      spec_error(kpath, "unknown field");
    }
  }
  if (spec.movement_id.empty()) spec_error(path, "missing field 'movement_id'");
  if (spec.clusters.empty()) spec_error(path, "missing field 'clusters'");
  return spec;
}

}  // namespace

std::vector<SynthSpec> load_synth_specs_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("synth spec: ") + e.what());
  }
  std::vector<SynthSpec> specs;
  if (doc.is_object() && doc.count("movements")) {
    const json& movements = doc["movements"];
    if (!movements.is_array() || movements.empty()) {
      spec_error("/movements", "expected a non-empty array");
    }
    for (std::size_t i = 0; i < movements.size(); ++i) {
      specs.push_back(
          parse_spec(movements[i], "/movements/" + std::to_string(i)));
    }
  } else {
    specs.push_back(parse_spec(doc, ""));
  }
  return specs;
}

}  // namespace tempoclust
