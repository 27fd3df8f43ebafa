#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tempoclust/kmeans.hpp"

namespace tempoclust {

// Winning k-means inertia per k over [k_min, k_max]; non-increasing in k
// when restarts are generous.
std::map<int, double> wcss_curve(const std::vector<Point>& points, int k_min,
                                 int k_max, int restarts, std::uint64_t seed);

struct SilhouetteResult {
  std::vector<double> scores;  // per point, in [-1, 1]; singletons score 0
  double mean = 0.0;
};

// Euclidean silhouette. Requires >= 3 points and >= 2 non-empty clusters.
// A point whose own cluster is a singleton scores 0, as does a point with
// max(a, b) = 0.
SilhouetteResult silhouette(const std::vector<Point>& points,
                            const std::vector<int>& assignments);

struct ValidityPolicy {
  double min_silhouette = 0.40;
  int min_cluster_size = 1;
  double silhouette_slack = 0.02;
};

struct KChoice {
  int supported_k = 2;
  bool three_way_supported = false;
};

// Three clusters are supported iff mean_sil(3) >= mean_sil(2) - slack,
// mean_sil(3) >= min_silhouette, and every k=3 cluster has at least
// min_cluster_size members; otherwise k falls back to 2.
KChoice choose_k(const std::map<int, double>& mean_silhouette_by_k,
                 const std::vector<int>& k3_cluster_sizes,
                 const ValidityPolicy& policy);

struct ValidityReport {
  int k_min = 0;
  int k_max = 0;
  std::map<int, double> wcss_by_k;
  std::map<int, double> mean_silhouette_by_k;  // k >= 2 entries only
  int supported_k = 2;
  bool three_way_supported = false;
};

}  // namespace tempoclust
