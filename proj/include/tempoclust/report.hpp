#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tempoclust/corpus.hpp"
#include "tempoclust/traditions.hpp"

namespace tempoclust {

struct RunMeta {
  std::uint64_t seed = 0;
  int restarts = 100;
  int k_target = 3;
  int split_year = 1970;
  ValidityPolicy policy;
  std::string version;
};

struct ReportBundle {
  RunMeta meta;
  std::vector<MovementReport> movements;  // movement_id order
  std::vector<AggregateChange> changes;
  std::optional<double> correlation;
  std::vector<AssociationResult> associations;  // category order
};

// Plain-text cluster summary for movements of one character. Columns:
// Movement, Cluster, N, MeanBPM, Range, R2; rows per movement in slow, mid,
// fast order with empty labels rendered as N=0 dash rows. Values use the
// display precision (BPM 1 decimal, R2 3 decimals) and fields never contain
// spaces, so splitting on whitespace runs recovers the rounded values.
std::string emit_cluster_table(const std::vector<MovementReport>& reports,
                               Character character_filter);

// Aggregate change table: Movement, Tempo%, Duration% (signed, 1 decimal),
// plus a |r| footer when a correlation is supplied.
std::string emit_change_table(const std::vector<AggregateChange>& changes,
                              std::optional<double> correlation);

struct SvgOptions {
  std::string palette = "default";  // or "high-contrast"
  int width = 760;
  int height = 520;
};

// Scatter of recording year vs mean BPM, one point group per present cluster
// (slow green, mid blue, fast red) and a dashed line for the mid cluster's
// drift fit when it exists. Byte-deterministic for a given report.
std::string emit_scatter_svg(const MovementReport& report, const Corpus& corpus,
                             const SvgOptions& options = {});

// Canonical JSON: keys sorted, floats rounded to 6 significant digits,
// undefined statistics rendered as null, LF line endings. Re-emission of a
// parsed bundle is byte-identical.
std::string emit_json(const ReportBundle& bundle);
ReportBundle parse_report_json(const std::string& text);

// Flat CSV views of the same numbers, one row per cluster / per change.
std::string emit_clusters_csv(const std::vector<MovementReport>& reports);
std::string emit_changes_csv(const std::vector<AggregateChange>& changes);

// Rounds to 6 significant digits (the JSON canonicalization rule).
double round_sig6(double value);

}  // namespace tempoclust
