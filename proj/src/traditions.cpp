#include "tempoclust/traditions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "tempoclust/features.hpp"

namespace tempoclust {

const char* to_string(Label label) {
  switch (label) {
    case Label::slow: return "slow";
    case Label::mid: return "mid";
    case Label::fast: return "fast";
  }
  return "mid";
}

Label label_from_string(const std::string& s) {
  if (s == "slow") return Label::slow;
  if (s == "mid") return Label::mid;
  if (s == "fast") return Label::fast;
  throw ParseError("label must be slow, mid, or fast, got '" + s + "'");
}

std::vector<Label> label_clusters(const std::vector<double>& centroid_mean_bpm,
                                  const std::vector<int>& counts) {
  const std::size_t k = centroid_mean_bpm.size();
  if (counts.size() != k) {
    throw DomainError("label_clusters requires one count per centroid");
  }
  std::vector<Label> labels(k, Label::mid);
  if (k == 3) {
    std::vector<std::size_t> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (centroid_mean_bpm[a] != centroid_mean_bpm[b]) {
        return centroid_mean_bpm[a] < centroid_mean_bpm[b];
      }
      return a < b;
    });
    labels[order[0]] = Label::slow;
    labels[order[1]] = Label::mid;
    labels[order[2]] = Label::fast;
  } else if (k == 2) {
    std::size_t mid = 0;
    if (counts[1] != counts[0]) {
      mid = counts[1] > counts[0] ? 1 : 0;
    } else if (centroid_mean_bpm[1] != centroid_mean_bpm[0]) {
      mid = centroid_mean_bpm[1] < centroid_mean_bpm[0] ? 1 : 0;
    }
    const std::size_t other = 1 - mid;
    labels[mid] = Label::mid;
    labels[other] = centroid_mean_bpm[other] > centroid_mean_bpm[mid]
                        ? Label::fast
                        : Label::slow;
  } else {
    throw DomainError("label_clusters supports k in {2, 3}, got k=" +
                      std::to_string(k));
  }
  return labels;
}

std::optional<RegressionFit> intra_cluster_fit(
    const std::vector<double>& years, const std::vector<double>& mean_bpms) {
  if (years.size() != mean_bpms.size()) {
    throw DomainError("intra_cluster_fit requires equal-length inputs");
  }
  if (years.size() < 3) return std::nullopt;
  const bool constant_years =
      std::all_of(years.begin(), years.end(),
                  [&](double y) { return y == years.front(); });
  if (constant_years) return std::nullopt;
  return ols_fit(years, mean_bpms);
}

MovementReport analyze_movement(const Corpus& corpus,
                                const std::string& movement_id,
                                const AnalyzeOptions& options) {
  if (options.k_target != 2 && options.k_target != 3) {
    throw DomainError("k_target must be 2 or 3");
  }
  if (options.restarts < 1) throw DomainError("restarts must be >= 1");

  const FeatureMatrix features = build_feature_matrix(corpus, movement_id);
  const std::size_t n = features.values.size();
  if (n < 4) {
    throw DomainError("movement '" + movement_id + "' has " +
                      std::to_string(n) + " recordings; analysis needs >= 4");
  }
  const StandardizedMatrix standardized = z_standardize(features);
  const std::vector<Point>& points = standardized.values;

  MovementReport report;
  report.movement_id = movement_id;
  report.character = corpus.movements.at(movement_id).character;
  report.degenerate_columns = standardized.degenerate_columns;

  report.validity.k_min = 1;
  report.validity.k_max = 3;
  report.validity.wcss_by_k =
      wcss_curve(points, 1, 3, options.restarts, options.seed);

  const ClusterModel model2 =
      kmeans_fit(points, 2, options.restarts, options.seed);
  const ClusterModel model3 =
      kmeans_fit(points, 3, options.restarts, options.seed);
  report.validity.mean_silhouette_by_k[2] =
      silhouette(points, model2.assignments).mean;
  report.validity.mean_silhouette_by_k[3] =
      silhouette(points, model3.assignments).mean;

  std::vector<int> sizes3(3, 0);
  for (int a : model3.assignments) sizes3[a] += 1;

  if (options.k_target == 3) {
    const KChoice choice = choose_k(report.validity.mean_silhouette_by_k,
                                    sizes3, options.policy);
    report.validity.supported_k = choice.supported_k;
    report.validity.three_way_supported = choice.three_way_supported;
  } else {
    report.validity.supported_k = 2;
    report.validity.three_way_supported = false;
  }

  const ClusterModel& model =
      report.validity.supported_k == 3 ? model3 : model2;
  const int k = report.validity.supported_k;

  std::vector<double> centroid_bpm(k);
  std::vector<int> counts(k, 0);
  for (int a : model.assignments) counts[a] += 1;
  for (int c = 0; c < k; ++c) {
    centroid_bpm[c] = de_standardize(model.centroids_std[c], standardized)[0];
  }
  const std::vector<Label> labels = label_clusters(centroid_bpm, counts);

  std::set<Label> present;
  std::map<Label, LabeledCluster> by_label;
  for (int c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;  // reduced model: label stays empty
    LabeledCluster cluster;
    cluster.label = labels[c];
    std::vector<double> years, bpms;
    for (std::size_t i = 0; i < n; ++i) {
      if (model.assignments[i] != c) continue;
      cluster.member_ids.push_back(features.row_ids[i]);
      bpms.push_back(features.values[i][0]);
      years.push_back(static_cast<double>(
          corpus.recordings.at(features.row_ids[i]).year));
    }
    cluster.n = static_cast<int>(cluster.member_ids.size());
    cluster.mean_bpm = std::accumulate(bpms.begin(), bpms.end(), 0.0) /
                       static_cast<double>(cluster.n);
    cluster.bpm_min = *std::min_element(bpms.begin(), bpms.end());
    cluster.bpm_max = *std::max_element(bpms.begin(), bpms.end());
    if (cluster.n > 1) {
      double ss = 0.0;
      for (double b : bpms) ss += (b - cluster.mean_bpm) * (b - cluster.mean_bpm);
      cluster.sd_bpm = std::sqrt(ss / static_cast<double>(cluster.n - 1));
    }
    cluster.fit = intra_cluster_fit(years, bpms);
    present.insert(cluster.label);
    by_label.emplace(cluster.label, std::move(cluster));
  }

  for (Label label : {Label::slow, Label::mid, Label::fast}) {
    auto it = by_label.find(label);
    if (it != by_label.end()) {
      report.clusters.push_back(std::move(it->second));
    } else {
      report.empty_labels.insert(label);
    }
  }

  // Dominant tradition: the largest cluster; ties prefer mid, then slow
  // (clusters are visited in slow, mid, fast order).
  int best_n = -1;
  for (const LabeledCluster& cluster : report.clusters) {
    if (cluster.n > best_n ||
        (cluster.n == best_n && cluster.label == Label::mid)) {
      best_n = cluster.n;
      report.dominant_label = cluster.label;
    }
  }
  report.dominant_share = static_cast<double>(best_n) / static_cast<double>(n);
  return report;
}

AggregateChange aggregate_period_change(const Corpus& corpus,
                                        const std::string& movement_id,
                                        int split_year) {
  auto it = corpus.movements.find(movement_id);
  if (it == corpus.movements.end()) {
    throw DomainError("unknown movement '" + movement_id + "'");
  }
  const Movement& movement = it->second;
  double tempo_early = 0.0, tempo_late = 0.0;
  double dur_early = 0.0, dur_late = 0.0;
  int n_early = 0, n_late = 0;
  for (const Recording* rec : corpus.recordings_of(movement_id)) {
    const double tempo = mean_bpm(rec->bar_bpm);
    const double duration = duration_minutes(*rec, movement);
    if (rec->year < split_year) {
      tempo_early += tempo;
      dur_early += duration;
      ++n_early;
    } else {
      tempo_late += tempo;
      dur_late += duration;
      ++n_late;
    }
  }
  if (n_early == 0 || n_late == 0) {
    throw DomainError("movement '" + movement_id +
                      "' has an empty period at split year " +
                      std::to_string(split_year));
  }
  AggregateChange change;
  change.movement_id = movement_id;
  change.split_year = split_year;
  change.n_early = n_early;
  change.n_late = n_late;
  tempo_early /= n_early;
  tempo_late /= n_late;
  dur_early /= n_early;
  dur_late /= n_late;
  change.tempo_pct = 100.0 * (tempo_late - tempo_early) / tempo_early;
  change.duration_pct = 100.0 * (dur_late - dur_early) / dur_early;
  return change;
}

double tempo_duration_correlation(const std::vector<AggregateChange>& changes) {
  if (changes.size() < 2) {
    throw DomainError("correlation requires at least 2 changes");
  }
  std::vector<double> tempo, duration;
  for (const AggregateChange& c : changes) {
    tempo.push_back(c.tempo_pct);
    duration.push_back(c.duration_pct);
  }
  return pearson_r(tempo, duration);
}

AssociationResult background_association(
    const std::vector<MovementReport>& reports, const Corpus& corpus,
    const std::string& category) {
  std::map<Label, std::map<std::string, int>> tally;
  std::set<std::string> value_set;
  for (const MovementReport& report : reports) {
    for (const LabeledCluster& cluster : report.clusters) {
      for (const std::string& id : cluster.member_ids) {
        auto rec = corpus.recordings.find(id);
        if (rec == corpus.recordings.end()) {
          throw DomainError("report member '" + id + "' is not in the corpus");
        }
        auto value = rec->second.background.find(category);
        if (value == rec->second.background.end()) continue;
        tally[cluster.label][value->second] += 1;
        value_set.insert(value->second);
      }
    }
  }
  if (tally.size() < 2 || value_set.size() < 2) {
    throw DomainError("association for '" + category +
                      "' needs >= 2 labels and >= 2 values with data");
  }

  AssociationResult result;
  result.category = category;
  for (const auto& [label, row] : tally) {
    result.labels.push_back(to_string(label));
  }
  result.values.assign(value_set.begin(), value_set.end());

  const std::size_t r = tally.size();
  const std::size_t c = value_set.size();
  result.counts.assign(r, std::vector<int>(c, 0));
  std::size_t i = 0;
  for (const auto& [label, row] : tally) {
    for (const auto& [value, count] : row) {
      const std::size_t j = std::distance(
          result.values.begin(),
          std::find(result.values.begin(), result.values.end(), value));
      result.counts[i][j] = count;
    }
    ++i;
  }

  std::vector<double> row_totals(r, 0.0), col_totals(c, 0.0);
  double total = 0.0;
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < c; ++b) {
      row_totals[a] += result.counts[a][b];
      col_totals[b] += result.counts[a][b];
      total += result.counts[a][b];
    }
  }
  double chi = 0.0;
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < c; ++b) {
      const double expected = row_totals[a] * col_totals[b] / total;
      const double d = result.counts[a][b] - expected;
      chi += d * d / expected;
    }
  }
  result.chi_square = chi;
  result.df = static_cast<int>((r - 1) * (c - 1));
  result.p_value = chi_square_sf(chi, result.df);
  const double min_dim = static_cast<double>(std::min(r, c) - 1);
  result.cramers_v = std::sqrt(chi / (total * min_dim));
  return result;
}

}  // namespace tempoclust
