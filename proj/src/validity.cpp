#include "tempoclust/validity.hpp"

#include <cmath>
#include <limits>

namespace tempoclust {

std::map<int, double> wcss_curve(const std::vector<Point>& points, int k_min,
                                 int k_max, int restarts, std::uint64_t seed) {
  if (k_min < 1 || k_min > k_max ||
      static_cast<std::size_t>(k_max) > points.size()) {
    throw DomainError("wcss_curve requires 1 <= k_min <= k_max <= n");
  }
  std::map<int, double> curve;
  for (int k = k_min; k <= k_max; ++k) {
    curve[k] = kmeans_fit(points, k, restarts, seed).inertia;
  }
  return curve;
}

SilhouetteResult silhouette(const std::vector<Point>& points,
                            const std::vector<int>& assignments) {
  const std::size_t n = points.size();
  if (n < 3) throw DomainError("silhouette requires at least 3 points");
  if (assignments.size() != n) {
    throw DomainError("silhouette requires one assignment per point");
  }

  int k = 0;
  for (int a : assignments) {
    if (a < 0) throw DomainError("silhouette requires non-negative labels");
    k = std::max(k, a + 1);
  }
  std::vector<int> counts(k, 0);
  for (int a : assignments) counts[a] += 1;
  int non_empty = 0;
  for (int c : counts) non_empty += c > 0;
  if (non_empty < 2) {
    throw DomainError("silhouette requires at least 2 non-empty clusters");
  }

  SilhouetteResult result;
  result.scores.resize(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int own = assignments[i];
    if (counts[own] == 1) {
      result.scores[i] = 0.0;  // singleton convention
      continue;
    }
    std::vector<double> sums(k, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      sums[assignments[j]] +=
          std::sqrt(squared_distance(points[i], points[j]));
    }
    const double a = sums[own] / static_cast<double>(counts[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      if (c == own || counts[c] == 0) continue;
      b = std::min(b, sums[c] / static_cast<double>(counts[c]));
    }
    const double denom = std::max(a, b);
    result.scores[i] = denom > 0.0 ? (b - a) / denom : 0.0;
  }
  for (double s : result.scores) total += s;
  result.mean = total / static_cast<double>(n);
  return result;
}

KChoice choose_k(const std::map<int, double>& mean_silhouette_by_k,
                 const std::vector<int>& k3_cluster_sizes,
                 const ValidityPolicy& policy) {
  const auto s2 = mean_silhouette_by_k.find(2);
  const auto s3 = mean_silhouette_by_k.find(3);
  if (s2 == mean_silhouette_by_k.end() || s3 == mean_silhouette_by_k.end()) {
    throw DomainError("choose_k requires mean silhouettes for k = 2 and k = 3");
  }
  if (k3_cluster_sizes.size() != 3) {
    throw DomainError("choose_k requires the three k=3 cluster sizes");
  }
  bool supported = s3->second >= s2->second - policy.silhouette_slack &&
                   s3->second >= policy.min_silhouette;
  for (int size : k3_cluster_sizes) {
    if (size < policy.min_cluster_size) supported = false;
  }
  return {supported ? 3 : 2, supported};
}

}  // namespace tempoclust
