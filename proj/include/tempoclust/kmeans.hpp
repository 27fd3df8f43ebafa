#pragma once

#include <cstdint>
#include <vector>

#include "tempoclust/error.hpp"
#include "tempoclust/rng.hpp"

namespace tempoclust {

using Point = std::vector<double>;

double squared_distance(const Point& a, const Point& b);

// Total within-cluster sum of squared distances to the assigned centroids.
double inertia_of(const std::vector<Point>& points,
                  const std::vector<int>& assignments,
                  const std::vector<Point>& centroids);

// k-means++ seeding: first centroid uniform, each next drawn with probability
// proportional to squared distance from the nearest chosen centroid. When all
// remaining squared distances are zero the draw falls back to uniform.
std::vector<Point> kmeans_pp_init(const std::vector<Point>& points, int k,
                                  SplitMix64& rng);

struct LloydStep {
  std::vector<int> assignments;   // nearest centroid, ties to the lowest index
  std::vector<Point> centroids;   // member means, empty clusters reseeded
  double inertia = 0.0;           // against the centroids passed in
};

// One assignment + update sweep. An empty cluster is reseeded to the point
// farthest from its own assigned (pre-update) centroid, ties to the lowest
// point index; multiple empty clusters consume distinct points in ascending
// cluster order.
LloydStep lloyd_step(const std::vector<Point>& points,
                     const std::vector<Point>& centroids);

struct Descent {
  std::vector<int> assignments;
  std::vector<Point> centroids;
  double inertia = 0.0;
  int iterations = 0;
  std::vector<double> trace;  // per-iteration inertia, non-increasing
  bool reduced_k = false;     // some cluster ended empty (duplicate points)
};

// Runs lloyd_step until the assignment reaches a fixed point or max_iter.
// The returned centroids are the ones the final assignment was computed
// against, so every point's cluster is its nearest centroid.
Descent lloyd_descent(const std::vector<Point>& points,
                      std::vector<Point> centroids, int max_iter = 300);

struct ClusterModel {
  int k = 0;
  std::vector<Point> centroids_std;  // in the space the fit ran in
  std::vector<Point> centroids_raw;  // filled by callers that standardized
  std::vector<int> assignments;
  double inertia = 0.0;
  std::uint64_t seed = 0;
  int restarts = 0;
  int winning_restart = 0;
  int iterations = 0;
  bool reduced_k = false;
};

// Restarted k-means: restart r runs k-means++ plus Lloyd descent on its own
// stream split_seed(seed, r); the lowest final inertia wins, ties to the
// lowest restart index. Bit-identical for identical inputs.
ClusterModel kmeans_fit(const std::vector<Point>& points, int k, int restarts,
                        std::uint64_t seed);

}  // namespace tempoclust
