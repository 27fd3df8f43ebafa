#include "tempoclust/kmeans.hpp"

#include <algorithm>
#include <limits>

namespace tempoclust {

double squared_distance(const Point& a, const Point& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double inertia_of(const std::vector<Point>& points,
                  const std::vector<int>& assignments,
                  const std::vector<Point>& centroids) {
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    total += squared_distance(points[i], centroids[assignments[i]]);
  }
  return total;
}

namespace {

void check_points(const std::vector<Point>& points, int k) {
  if (points.empty()) throw DomainError("k-means requires at least one point");
  const std::size_t dim = points[0].size();
  if (dim == 0) throw DomainError("k-means requires non-empty points");
  for (const Point& p : points) {
    if (p.size() != dim) {
      throw DomainError("k-means requires points of equal dimension");
    }
  }
  if (k < 1 || static_cast<std::size_t>(k) > points.size()) {
    throw DomainError("k must satisfy 1 <= k <= n, got k=" + std::to_string(k) +
                      " with n=" + std::to_string(points.size()));
  }
}

int nearest_centroid(const Point& p, const std::vector<Point>& centroids) {
  int best = 0;
  double best_d2 = squared_distance(p, centroids[0]);
  for (std::size_t j = 1; j < centroids.size(); ++j) {
    const double d2 = squared_distance(p, centroids[j]);
    if (d2 < best_d2) {  // strict: ties stay with the lowest index
      best_d2 = d2;
      best = static_cast<int>(j);
    }
  }
  return best;
}

}  // namespace

std::vector<Point> kmeans_pp_init(const std::vector<Point>& points, int k,
                                  SplitMix64& rng) {
  check_points(points, k);
  const std::size_t n = points.size();
  std::vector<Point> centroids;
  centroids.reserve(k);
  centroids.push_back(points[rng.next_below(n)]);

  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) {
    d2[i] = squared_distance(points[i], centroids[0]);
  }

  for (int j = 1; j < k; ++j) {
    double total = 0.0;
    for (double w : d2) total += w;
    std::size_t chosen;
    if (total <= 0.0) {
      chosen = rng.next_below(n);
    } else {
      const double u = rng.next_double() * total;
      double acc = 0.0;
      chosen = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (u < acc) {
          chosen = i;
          break;
        }
      }
      // Rounding can leave u >= acc at the end; fall back to the last point
      // that carries weight.
      if (u >= acc) {
        for (std::size_t i = n; i-- > 0;) {
          if (d2[i] > 0.0) {
            chosen = i;
            break;
          }
        }
      }
    }
    centroids.push_back(points[chosen]);
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], squared_distance(points[i], centroids.back()));
    }
  }
  return centroids;
}

LloydStep lloyd_step(const std::vector<Point>& points,
                     const std::vector<Point>& centroids) {
  check_points(points, static_cast<int>(centroids.size()));
  const std::size_t n = points.size();
  const std::size_t k = centroids.size();
  const std::size_t dim = points[0].size();

  LloydStep step;
  step.assignments.resize(n);
  std::vector<double> dist2(n);
  for (std::size_t i = 0; i < n; ++i) {
    step.assignments[i] = nearest_centroid(points[i], centroids);
    dist2[i] = squared_distance(points[i], centroids[step.assignments[i]]);
    step.inertia += dist2[i];
  }

  step.centroids.assign(k, Point(dim, 0.0));
  std::vector<int> counts(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    counts[step.assignments[i]] += 1;
    for (std::size_t d = 0; d < dim; ++d) {
      step.centroids[step.assignments[i]][d] += points[i][d];
    }
  }

  std::vector<bool> consumed(n, false);
  for (std::size_t j = 0; j < k; ++j) {
    if (counts[j] > 0) {
      for (std::size_t d = 0; d < dim; ++d) {
        step.centroids[j][d] /= static_cast<double>(counts[j]);
      }
      continue;
    }
    // Empty cluster: reseed to the point farthest from its assigned
    // pre-update centroid; ties to the lowest index; each reseed consumes
    // its point so several empties land on distinct points.
    std::size_t farthest = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!consumed[i] && dist2[i] > best) {
        best = dist2[i];
        farthest = i;
      }
    }
    consumed[farthest] = true;
    step.centroids[j] = points[farthest];
  }
  return step;
}

Descent lloyd_descent(const std::vector<Point>& points,
                       std::vector<Point> centroids, int max_iter) {
  Descent descent;
  std::vector<int> previous;
  for (int iter = 1; iter <= max_iter; ++iter) {
    LloydStep step = lloyd_step(points, centroids);
    descent.trace.push_back(step.inertia);
    descent.iterations = iter;
    const bool fixed_point = step.assignments == previous;
    previous = step.assignments;
    if (fixed_point || iter == max_iter) {
      // Report the centroids this assignment was computed against: each
      // point's cluster is then its nearest centroid and the inertia is
      // exactly the recomputed sum.
      descent.assignments = std::move(step.assignments);
      descent.centroids = std::move(centroids);
      descent.inertia = step.inertia;
      break;
    }
    centroids = std::move(step.centroids);
  }

  std::vector<int> counts(descent.centroids.size(), 0);
  for (int a : descent.assignments) counts[a] += 1;
  for (int c : counts) {
    if (c == 0) descent.reduced_k = true;
  }
  return descent;
}

ClusterModel kmeans_fit(const std::vector<Point>& points, int k, int restarts,
                        std::uint64_t seed) {
  check_points(points, k);
  if (restarts < 1) throw DomainError("kmeans_fit requires restarts >= 1");

  ClusterModel best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    SplitMix64 rng(split_seed(seed, static_cast<std::uint64_t>(r)));
    Descent descent = lloyd_descent(points, kmeans_pp_init(points, k, rng));
    if (descent.inertia < best.inertia) {  // strict: ties keep the lowest r
      best.k = k;
      best.centroids_std = std::move(descent.centroids);
      best.assignments = std::move(descent.assignments);
      best.inertia = descent.inertia;
      best.winning_restart = r;
      best.iterations = descent.iterations;
      best.reduced_k = descent.reduced_k;
    }
  }
  best.seed = seed;
  best.restarts = restarts;
  return best;
}

}  // namespace tempoclust
