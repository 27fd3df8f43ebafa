#pragma once

#include <string>
#include <vector>

#include "tempoclust/corpus.hpp"

namespace tempoclust {

double mean_bpm(const std::vector<double>& series);  // empty -> DomainError
double cv_bpm(const std::vector<double>& series);    // size < 2 -> DomainError

struct FeatureMatrix {
  std::string movement_id;
  std::vector<std::string> row_ids;   // recording ids, ascending
  std::vector<std::string> columns;   // "mean_bpm" [, "cv_bpm"]
  std::vector<std::vector<double>> values;  // row-major, one row per recording
};

// Column set follows the movement's feature spec. A movement with no
// recordings, or a mean_and_cv movement containing a single-bar recording,
// raises DomainError naming the offender.
FeatureMatrix build_feature_matrix(const Corpus& corpus,
                                   const std::string& movement_id);

struct StandardizedMatrix {
  std::string movement_id;
  std::vector<std::string> row_ids;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;
  std::vector<double> column_means;
  std::vector<double> column_sds;          // sample SD; 0 for degenerate columns
  std::vector<std::string> degenerate_columns;
};

// Per-column z-scores with sample SD (n-1). A column whose variance vanishes
// (relative to its mean scale) is degenerate: it standardizes to all zeros
// and de-standardizes back to the column mean.
StandardizedMatrix z_standardize(const FeatureMatrix& matrix);

// Maps one standardized point back to raw units.
std::vector<double> de_standardize(const std::vector<double>& point,
                                   const StandardizedMatrix& matrix);

}  // namespace tempoclust
