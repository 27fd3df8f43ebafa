#include "tempoclust/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "tempoclust/csv.hpp"

namespace tempoclust {

const char* to_string(Character c) {
  return c == Character::fast ? "fast" : "slow";
}

const char* to_string(FeatureSpecKind f) {
  return f == FeatureSpecKind::mean_only ? "mean_only" : "mean_and_cv";
}

Character character_from_string(const std::string& s) {
  if (s == "fast") return Character::fast;
  if (s == "slow") return Character::slow;
  throw ParseError("character must be 'fast' or 'slow', got '" + s + "'");
}

FeatureSpecKind feature_spec_from_string(const std::string& s) {
  if (s == "mean_only") return FeatureSpecKind::mean_only;
  if (s == "mean_and_cv") return FeatureSpecKind::mean_and_cv;
  throw ParseError("feature_spec must be 'mean_only' or 'mean_and_cv', got '" +
                   s + "'");
}

std::vector<const Recording*> Corpus::recordings_of(
    const std::string& movement_id) const {
  std::vector<const Recording*> out;
  for (const auto& [id, rec] : recordings) {
    if (rec.movement_id == movement_id) out.push_back(&rec);
  }
  return out;
}

namespace {

std::string at_line(const std::string& file, std::size_t line) {
  return file + ":" + std::to_string(line) + ": ";
}

int parse_int(const std::string& s, const std::string& context) {
  int value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(context + "'" + s + "' is not an integer");
  }
  return value;
}

double parse_double(const std::string& s, const std::string& context) {
  if (s.empty()) throw ParseError(context + "empty numeric field");
  char* end = nullptr;
  const double value = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(value)) {
    throw ParseError(context + "'" + s + "' is not a finite number");
  }
  return value;
}

// Column name -> index; every name in `required` must be present exactly once.
std::map<std::string, std::size_t> index_columns(
    const CsvTable& table, const std::string& file,
    const std::vector<std::string>& required) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (!index.emplace(table.header[i], i).second) {
      throw ParseError(file + ": duplicate column '" + table.header[i] + "'");
    }
  }
  for (const auto& name : required) {
    if (!index.count(name)) {
      throw ParseError(file + ": missing column '" + name + "'");
    }
  }
  return index;
}

}  // namespace

Corpus parse_corpus(const std::string& movements_csv,
                    const std::string& recordings_csv,
                    const std::string& bars_csv) {
  Corpus corpus;

  {
    const std::string file = "movements.csv";
    const CsvTable table = parse_csv(movements_csv, file);
    const auto col = index_columns(
        table, file,
        {"movement_id", "sonata_label", "movement_name", "character",
         "beats_per_bar", "feature_spec"});
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const auto& row = table.rows[r];
      const std::string ctx = at_line(file, table.row_lines[r]);
      Movement m;
      m.movement_id = row[col.at("movement_id")];
      if (m.movement_id.empty()) throw ParseError(ctx + "empty movement_id");
      m.sonata_label = row[col.at("sonata_label")];
      m.movement_name = row[col.at("movement_name")];
      try {
        m.character = character_from_string(row[col.at("character")]);
        m.feature_spec = feature_spec_from_string(row[col.at("feature_spec")]);
      } catch (const ParseError& e) {
        throw ParseError(ctx + e.what());
      }
      m.beats_per_bar = parse_int(row[col.at("beats_per_bar")], ctx);
      if (m.beats_per_bar < 1) {
        throw ParseError(ctx + "beats_per_bar must be >= 1");
      }
      if (m.feature_spec == FeatureSpecKind::mean_and_cv &&
          m.character != Character::slow) {
        throw ParseError(ctx + "feature_spec mean_and_cv requires character slow");
      }
      if (!corpus.movements.emplace(m.movement_id, m).second) {
        throw ParseError(ctx + "duplicate movement_id '" + m.movement_id + "'");
      }
    }
  }

  {
    const std::string file = "recordings.csv";
    const CsvTable table = parse_csv(recordings_csv, file);
    const auto col = index_columns(
        table, file, {"recording_id", "performer", "year", "movement_id"});
    std::vector<std::pair<std::string, std::size_t>> background_cols;
    for (const auto& [name, idx] : col) {
      if (name.rfind("background.", 0) == 0) {
        const std::string category = name.substr(std::string("background.").size());
        if (category.empty()) {
          throw ParseError(file + ": background column with empty category name");
        }
        background_cols.emplace_back(category, idx);
      } else if (name != "recording_id" && name != "performer" &&
                 name != "year" && name != "movement_id") {
        throw ParseError(file + ": unknown column '" + name + "'");
      }
    }
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const auto& row = table.rows[r];
      const std::string ctx = at_line(file, table.row_lines[r]);
      Recording rec;
      rec.recording_id = row[col.at("recording_id")];
      if (rec.recording_id.empty()) throw ParseError(ctx + "empty recording_id");
      rec.performer = row[col.at("performer")];
      rec.year = parse_int(row[col.at("year")], ctx + "year ");
      rec.movement_id = row[col.at("movement_id")];
      if (!corpus.movements.count(rec.movement_id)) {
        throw ParseError(ctx + "unknown movement_id '" + rec.movement_id + "'");
      }
      for (const auto& [category, idx] : background_cols) {
        if (!row[idx].empty()) rec.background[category] = row[idx];
      }
      if (!corpus.recordings.emplace(rec.recording_id, rec).second) {
        throw ParseError(ctx + "duplicate recording_id '" + rec.recording_id + "'");
      }
    }
  }

  {
    const std::string file = "bars.csv";
    const CsvTable table = parse_csv(bars_csv, file);
    const auto col = index_columns(table, file,
                                   {"recording_id", "bar_index", "bpm"});
    std::map<std::string, std::vector<std::pair<int, double>>> series;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const auto& row = table.rows[r];
      const std::string ctx = at_line(file, table.row_lines[r]);
      const std::string& id = row[col.at("recording_id")];
      if (!corpus.recordings.count(id)) {
        throw ParseError(ctx + "unknown recording_id '" + id + "'");
      }
      const int bar_index = parse_int(row[col.at("bar_index")], ctx + "bar_index ");
      if (bar_index < 0) throw ParseError(ctx + "bar_index must be >= 0");
      const double bpm = parse_double(row[col.at("bpm")], ctx + "bpm ");
      if (bpm <= 0.0) throw ParseError(ctx + "bpm must be positive");
      series[id].emplace_back(bar_index, bpm);
    }
    for (auto& [id, bars] : series) {
      std::sort(bars.begin(), bars.end());
      auto& target = corpus.recordings.at(id).bar_bpm;
      target.reserve(bars.size());
      for (std::size_t i = 0; i < bars.size(); ++i) {
        if (bars[i].first != static_cast<int>(i)) {
          throw ParseError(file + ": recording '" + id +
                           "' bar indices are not contiguous from 0 (saw " +
                           std::to_string(bars[i].first) + " at position " +
                           std::to_string(i) + ")");
        }
        target.push_back(bars[i].second);
      }
    }
    for (const auto& [id, rec] : corpus.recordings) {
      if (rec.bar_bpm.empty()) {
        throw ParseError(file + ": recording '" + id + "' has no bars");
      }
    }
  }

  return corpus;
}

CorpusText corpus_to_csv(const Corpus& corpus) {
  CorpusText out;

  out.movements_csv = csv_join({"movement_id", "sonata_label", "movement_name",
                                "character", "beats_per_bar", "feature_spec"});
  for (const auto& [id, m] : corpus.movements) {
    out.movements_csv += csv_join({m.movement_id, m.sonata_label,
                                   m.movement_name, to_string(m.character),
                                   std::to_string(m.beats_per_bar),
                                   to_string(m.feature_spec)});
  }

  std::set<std::string> categories;
  for (const auto& [id, rec] : corpus.recordings) {
    for (const auto& [category, value] : rec.background) categories.insert(category);
  }
  std::vector<std::string> rec_header = {"recording_id", "performer", "year",
                                         "movement_id"};
  for (const auto& category : categories) rec_header.push_back("background." + category);
  out.recordings_csv = csv_join(rec_header);
  for (const auto& [id, rec] : corpus.recordings) {
    std::vector<std::string> row = {rec.recording_id, rec.performer,
                                    std::to_string(rec.year), rec.movement_id};
    for (const auto& category : categories) {
      auto it = rec.background.find(category);
      row.push_back(it == rec.background.end() ? "" : it->second);
    }
    out.recordings_csv += csv_join(row);
  }

  out.bars_csv = csv_join({"recording_id", "bar_index", "bpm"});
  char buf[64];
  for (const auto& [id, rec] : corpus.recordings) {
    for (std::size_t i = 0; i < rec.bar_bpm.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.6f", rec.bar_bpm[i]);
      out.bars_csv += csv_join({rec.recording_id, std::to_string(i), buf});
    }
  }
  return out;
}

bool ValidationReport::has_errors() const { return error_count() > 0; }

std::size_t ValidationReport::error_count() const {
  std::size_t n = 0;
  for (const auto& f : findings) n += f.severity == Severity::error;
  return n;
}

std::size_t ValidationReport::warning_count() const {
  return findings.size() - error_count();
}

ValidationReport validate_corpus(const Corpus& corpus,
                                 const ValidationOptions& options) {
  ValidationReport report;
  auto add = [&](Severity severity, const std::string& location,
                 const std::string& message) {
    report.findings.push_back({severity, location, message});
  };

  for (const auto& [id, m] : corpus.movements) {
    if (m.beats_per_bar < 1) {
      add(Severity::error, "movement " + id, "beats_per_bar must be >= 1");
    }
    if (m.feature_spec == FeatureSpecKind::mean_and_cv &&
        m.character != Character::slow) {
      add(Severity::error, "movement " + id,
          "feature_spec mean_and_cv requires character slow");
    }
  }

  std::map<std::string, int> counts;
  std::map<std::string, std::vector<std::string>> performance_key;
  for (const auto& [id, rec] : corpus.recordings) {
    const std::string loc = "recording " + id;
    if (!corpus.movements.count(rec.movement_id)) {
      add(Severity::error, loc,
          "references unknown movement '" + rec.movement_id + "'");
    } else {
      counts[rec.movement_id] += 1;
    }
    if (rec.bar_bpm.empty()) {
      add(Severity::error, loc, "has an empty bar series");
    }
    for (double bpm : rec.bar_bpm) {
      if (!(bpm > 0.0) || !std::isfinite(bpm)) {
        add(Severity::error, loc, "has a non-positive or non-finite bar BPM");
        break;
      }
    }
    if (rec.year < options.validity_year_min ||
        rec.year > options.validity_year_max) {
      add(Severity::warning, loc,
          "year " + std::to_string(rec.year) + " outside validity window " +
              std::to_string(options.validity_year_min) + "-" +
              std::to_string(options.validity_year_max));
    } else if (rec.year < options.study_year_min ||
               rec.year > options.study_year_max) {
      add(Severity::warning, loc,
          "year " + std::to_string(rec.year) + " outside study window " +
              std::to_string(options.study_year_min) + "-" +
              std::to_string(options.study_year_max));
    }
    performance_key[rec.performer + "\x1f" + std::to_string(rec.year) + "\x1f" +
                    rec.movement_id]
        .push_back(id);
  }

  for (const auto& [id, m] : corpus.movements) {
    const int n = counts.count(id) ? counts.at(id) : 0;
    if (n < options.movement_count_min) {
      add(Severity::warning, "movement " + id,
          "has " + std::to_string(n) + " recordings, below " +
              std::to_string(options.movement_count_min));
    } else if (n > options.movement_count_max) {
      add(Severity::warning, "movement " + id,
          "has " + std::to_string(n) + " recordings, above " +
              std::to_string(options.movement_count_max));
    }
  }

  for (const auto& [key, ids] : performance_key) {
    if (ids.size() > 1) {
      std::string joined;
      for (const auto& id : ids) {
        if (!joined.empty()) joined += ", ";
        joined += id;
      }
      add(Severity::warning, "recordings " + joined,
          "share performer, year, and movement");
    }
  }

  return report;
}

double duration_minutes(const Recording& recording, const Movement& movement) {
  if (recording.bar_bpm.empty()) {
    throw DomainError("recording '" + recording.recording_id +
                      "' has no bars to time");
  }
  double minutes = 0.0;
  for (double bpm : recording.bar_bpm) {
    if (!(bpm > 0.0)) {
      throw DomainError("recording '" + recording.recording_id +
                        "' has a non-positive bar BPM");
    }
    minutes += movement.beats_per_bar / bpm;
  }
  return minutes;
}

}  // namespace tempoclust
