#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tempoclust/corpus.hpp"
#include "tempoclust/report.hpp"

namespace tempoclust {

struct PipelineConfig {
  int k_target = 3;
  int restarts = 100;
  std::uint64_t seed = 0;
  int split_year = 1970;
  ValidityPolicy policy;
  int jobs = 0;  // 0 = hardware concurrency
};

struct PipelineResult {
  ReportBundle bundle;
  std::vector<std::string> skipped_movements;  // fewer than 4 recordings
};

// Analyzes every movement with at least 4 recordings, computes aggregate
// period changes (movements whose periods are both non-empty), the
// tempo/duration correlation when defined, and pooled background
// associations per category. Movements may run in a worker pool; assembly
// is an ordered reduction, so results do not depend on the job count.
PipelineResult analyze_corpus(const Corpus& corpus, const PipelineConfig& config);

}  // namespace tempoclust
