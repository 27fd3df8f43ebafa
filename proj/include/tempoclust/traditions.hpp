#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tempoclust/corpus.hpp"
#include "tempoclust/regress.hpp"
#include "tempoclust/validity.hpp"

namespace tempoclust {

enum class Label { slow, mid, fast };

const char* to_string(Label label);
Label label_from_string(const std::string& s);

// Maps cluster indices to labels. k = 3: ascending raw mean-BPM centroid
// order is slow, mid, fast (centroid ties by cluster index). k = 2: the more
// populous cluster is mid (population ties to the lower centroid, then the
// lower index); the other is fast when its centroid is higher, else slow.
std::vector<Label> label_clusters(const std::vector<double>& centroid_mean_bpm,
                                  const std::vector<int>& counts);

struct LabeledCluster {
  Label label = Label::mid;
  std::vector<std::string> member_ids;
  int n = 0;
  double mean_bpm = 0.0;
  double bpm_min = 0.0;
  double bpm_max = 0.0;
  double sd_bpm = 0.0;  // sample SD of member mean BPM; 0 for singletons
  std::optional<RegressionFit> fit;  // mean BPM on year; absent when n < 3
};

struct MovementReport {
  std::string movement_id;
  Character character = Character::fast;
  ValidityReport validity;
  std::vector<LabeledCluster> clusters;  // slow, mid, fast order, present only
  std::set<Label> empty_labels;
  Label dominant_label = Label::mid;
  double dominant_share = 0.0;
  std::vector<std::string> degenerate_columns;
};

struct AnalyzeOptions {
  int k_target = 3;  // in {2, 3}
  int restarts = 100;
  std::uint64_t seed = 0;
  ValidityPolicy policy;
};

// Full per-movement pipeline: features, z-standardization, validity for
// k in {2, 3} (WCSS also at k = 1), choose_k (skipped when k_target = 2),
// the winning k-means model, labels, per-cluster stats and drift fits.
// Requires >= 4 recordings.
MovementReport analyze_movement(const Corpus& corpus,
                                const std::string& movement_id,
                                const AnalyzeOptions& options);

// OLS of member mean BPM on recording year; absent when n < 3 or all years
// coincide (no drift is estimable from a single year).
std::optional<RegressionFit> intra_cluster_fit(
    const std::vector<double>& years, const std::vector<double>& mean_bpms);

struct AggregateChange {
  std::string movement_id;
  int split_year = 1970;
  double tempo_pct = 0.0;
  double duration_pct = 0.0;
  int n_early = 0;
  int n_late = 0;
};

// Percentage change of mean recording tempo and mean duration from the
// period before split_year to the period at or after it. Either period
// empty raises DomainError.
AggregateChange aggregate_period_change(const Corpus& corpus,
                                        const std::string& movement_id,
                                        int split_year = 1970);

// Pearson r between tempo_pct and duration_pct across movements; needs >= 2
// changes and non-constant columns.
double tempo_duration_correlation(const std::vector<AggregateChange>& changes);

struct AssociationResult {
  std::string category;
  std::vector<std::string> labels;  // row names, slow < mid < fast
  std::vector<std::string> values; // column names, ascending
  std::vector<std::vector<int>> counts;
  double chi_square = 0.0;
  int df = 0;
  double p_value = 1.0;
  double cramers_v = 0.0;
};

// Pools label x category counts over the given movement reports, then runs
// the chi-square independence test with Cramer's V effect size. Requires at
// least 2 labels and 2 category values among members that carry the category.
AssociationResult background_association(
    const std::vector<MovementReport>& reports, const Corpus& corpus,
    const std::string& category);

}  // namespace tempoclust
