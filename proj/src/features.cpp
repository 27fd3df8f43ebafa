#include "tempoclust/features.hpp"

#include <cmath>

namespace tempoclust {

double mean_bpm(const std::vector<double>& series) {
  if (series.empty()) throw DomainError("mean_bpm of an empty series");
  double sum = 0.0;
  for (double v : series) sum += v;
  return sum / static_cast<double>(series.size());
}

double cv_bpm(const std::vector<double>& series) {
  if (series.size() < 2) {
    throw DomainError("cv_bpm needs at least 2 bars, got " +
                      std::to_string(series.size()));
  }
  const double mean = mean_bpm(series);
  double ss = 0.0;
  for (double v : series) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(series.size() - 1));
  return sd / mean;
}

FeatureMatrix build_feature_matrix(const Corpus& corpus,
                                   const std::string& movement_id) {
  auto it = corpus.movements.find(movement_id);
  if (it == corpus.movements.end()) {
    throw DomainError("unknown movement '" + movement_id + "'");
  }
  const Movement& movement = it->second;
  const auto recordings = corpus.recordings_of(movement_id);
  if (recordings.empty()) {
    throw DomainError("movement '" + movement_id + "' has no recordings");
  }

  FeatureMatrix matrix;
  matrix.movement_id = movement_id;
  matrix.columns = {"mean_bpm"};
  const bool with_cv = movement.feature_spec == FeatureSpecKind::mean_and_cv;
  if (with_cv) matrix.columns.push_back("cv_bpm");

  for (const Recording* rec : recordings) {
    matrix.row_ids.push_back(rec->recording_id);
    std::vector<double> row = {mean_bpm(rec->bar_bpm)};
    if (with_cv) {
      if (rec->bar_bpm.size() < 2) {
        throw DomainError("recording '" + rec->recording_id +
                          "' has a single bar; cv_bpm is undefined");
      }
      row.push_back(cv_bpm(rec->bar_bpm));
    }
    matrix.values.push_back(std::move(row));
  }
  return matrix;
}

StandardizedMatrix z_standardize(const FeatureMatrix& matrix) {
  const std::size_t rows = matrix.values.size();
  const std::size_t cols = matrix.columns.size();
  if (rows == 0) throw DomainError("cannot standardize an empty matrix");

  StandardizedMatrix out;
  out.movement_id = matrix.movement_id;
  out.row_ids = matrix.row_ids;
  out.columns = matrix.columns;
  out.values.assign(rows, std::vector<double>(cols, 0.0));
  out.column_means.assign(cols, 0.0);
  out.column_sds.assign(cols, 0.0);

  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < rows; ++r) sum += matrix.values[r][c];
    const double mean = sum / static_cast<double>(rows);
    double ss = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double d = matrix.values[r][c] - mean;
      ss += d * d;
    }
    const double sd =
        rows > 1 ? std::sqrt(ss / static_cast<double>(rows - 1)) : 0.0;
    out.column_means[c] = mean;
    // Accumulated rounding can leave a constant column with SD ~ 1e-17 of its
    // own scale; grade that as zero variance rather than dividing by it.
    const bool degenerate = sd <= 1e-12 * std::max(1.0, std::fabs(mean));
    if (degenerate) {
      out.degenerate_columns.push_back(matrix.columns[c]);
      continue;  // values stay 0, sd stays 0
    }
    out.column_sds[c] = sd;
    for (std::size_t r = 0; r < rows; ++r) {
      out.values[r][c] = (matrix.values[r][c] - mean) / sd;
    }
  }
  return out;
}

std::vector<double> de_standardize(const std::vector<double>& point,
                                   const StandardizedMatrix& matrix) {
  if (point.size() != matrix.columns.size()) {
    throw DomainError("point dimension does not match the matrix");
  }
  std::vector<double> out(point.size());
  for (std::size_t c = 0; c < point.size(); ++c) {
    out[c] = point[c] * matrix.column_sds[c] + matrix.column_means[c];
  }
  return out;
}

}  // namespace tempoclust
