#pragma once

#include <map>
#include <string>
#include <vector>

#include "tempoclust/error.hpp"

namespace tempoclust {

enum class Character { fast, slow };
enum class FeatureSpecKind { mean_only, mean_and_cv };

const char* to_string(Character c);
const char* to_string(FeatureSpecKind f);
Character character_from_string(const std::string& s);
FeatureSpecKind feature_spec_from_string(const std::string& s);

struct Movement {
  std::string movement_id;
  std::string sonata_label;
  std::string movement_name;
  Character character = Character::fast;
  int beats_per_bar = 4;
  FeatureSpecKind feature_spec = FeatureSpecKind::mean_only;
};

struct Recording {
  std::string recording_id;
  std::string performer;
  int year = 0;
  std::string movement_id;
  std::vector<double> bar_bpm;  // one value per bar, sorted by bar index
  std::map<std::string, std::string> background;  // category name -> value
};

struct Corpus {
  std::map<std::string, Movement> movements;
  std::map<std::string, Recording> recordings;

  // Recordings of one movement in recording_id order.
  std::vector<const Recording*> recordings_of(const std::string& movement_id) const;
};

// Parses the three CSV documents into a cross-referenced corpus. Structural
// breaks (missing columns, duplicate or dangling keys, non-positive BPM,
// gapped bar indices, empty bar series) raise ParseError naming file and line.
Corpus parse_corpus(const std::string& movements_csv,
                    const std::string& recordings_csv,
                    const std::string& bars_csv);

struct CorpusText {
  std::string movements_csv;
  std::string recordings_csv;
  std::string bars_csv;
};

// Inverse of parse_corpus; BPM values are written with 6 decimal places.
CorpusText corpus_to_csv(const Corpus& corpus);

enum class Severity { warning, error };

struct Finding {
  Severity severity = Severity::warning;
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;
  bool has_errors() const;
  std::size_t error_count() const;
  std::size_t warning_count() const;
};

struct ValidationOptions {
  int validity_year_min = 1900;
  int validity_year_max = 2100;
  int study_year_min = 1930;
  int study_year_max = 2012;
  int movement_count_min = 5;
  int movement_count_max = 100;
};

// Pure: never mutates the corpus and is stable across calls.
ValidationReport validate_corpus(const Corpus& corpus,
                                 const ValidationOptions& options = {});

// Played time in minutes: sum over bars of beats_per_bar / bpm.
double duration_minutes(const Recording& recording, const Movement& movement);

}  // namespace tempoclust
