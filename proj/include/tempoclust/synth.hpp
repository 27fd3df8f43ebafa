#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tempoclust/corpus.hpp"

namespace tempoclust {

struct SynthCluster {
  std::string label_hint;            // informational only
  int n = 0;
  double mean_bpm = 0.0;
  double sd_bpm = 0.0;               // between-recording spread
  int year_min = 1930;
  int year_max = 2012;
  double slope_bpm_per_year = 0.0;   // drift around the window midpoint
};

struct SynthSpec {
  std::string movement_id;
  std::string sonata_label;
  std::string movement_name = "Synthetic";
  Character character = Character::fast;
  int beats_per_bar = 2;
  FeatureSpecKind feature_spec = FeatureSpecKind::mean_only;
  std::vector<SynthCluster> clusters;
  int bars_per_recording = 24;
  double bar_noise_sd = 0.0;         // within-recording spread
  std::uint64_t seed = 0;
};

// Generates one movement per spec. Cluster recording years are evenly spaced
// over [year_min, year_max] (a single recording sits at the midpoint); the
// recording mean is mean_bpm + slope * (year - midpoint) + N(0, sd_bpm) and
// each bar adds N(0, bar_noise_sd); recording means and bar values are
// truncated below at 1 BPM. One splitmix stream per movement, consumed in
// cluster order then recording order, keeps output byte-reproducible.
Corpus synth_corpus(const SynthSpec& spec);
Corpus synth_corpus(const std::vector<SynthSpec>& specs);

struct TableRow {
  std::string label_hint;
  int n = 0;
  double mean_bpm = 0.0;
  bool has_range = false;   // false for dash rows (typically singletons)
  double range_min = 0.0;
  double range_max = 0.0;
};

// Builds a synthesis spec from published summary rows: sd_bpm is
// (range_max - range_min) / divisor, zero for rows without a range; n = 0
// rows are dropped. Inverted ranges raise DomainError.
SynthSpec spec_from_table_rows(const std::string& movement_id,
                               const std::vector<TableRow>& rows,
                               double range_to_sd_divisor = 4.0);

// JSON spec files: either a single spec object or {"movements": [spec, ...]}.
// Field errors raise ParseError carrying the JSON path of the offender.
std::vector<SynthSpec> load_synth_specs_json(const std::string& json_text);

}  // namespace tempoclust
