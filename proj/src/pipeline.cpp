#include "tempoclust/pipeline.hpp"

#include <atomic>
#include <exception>
#include <set>
#include <thread>

#include "tempoclust/traditions.hpp"
#include "tempoclust/version.hpp"

namespace tempoclust {

PipelineResult analyze_corpus(const Corpus& corpus,
                              const PipelineConfig& config) {
  PipelineResult result;
  result.bundle.meta.seed = config.seed;
  result.bundle.meta.restarts = config.restarts;
  result.bundle.meta.k_target = config.k_target;
  result.bundle.meta.split_year = config.split_year;
  result.bundle.meta.policy = config.policy;
  result.bundle.meta.version = kVersion;

  std::vector<std::string> eligible;
  for (const auto& [movement_id, movement] : corpus.movements) {
    if (corpus.recordings_of(movement_id).size() >= 4) {
      eligible.push_back(movement_id);
    } else {
      result.skipped_movements.push_back(movement_id);
    }
  }

  AnalyzeOptions options;
  options.k_target = config.k_target;
  options.restarts = config.restarts;
  options.seed = config.seed;
  options.policy = config.policy;

  // One slot per movement keeps assembly order independent of scheduling.
  std::vector<MovementReport> reports(eligible.size());
  std::vector<std::exception_ptr> failures(eligible.size());
  unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                  : std::thread::hardware_concurrency();
  if (jobs == 0) jobs = 1;
  jobs = std::min<unsigned>(jobs, std::max<std::size_t>(eligible.size(), 1));

  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= eligible.size()) return;
      try {
        reports[i] = analyze_movement(corpus, eligible[i], options);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  result.bundle.movements = std::move(reports);

  for (const std::string& movement_id : eligible) {
    try {
      result.bundle.changes.push_back(
          aggregate_period_change(corpus, movement_id, config.split_year));
    } catch (const DomainError&) {
      // One of the periods is empty; the movement has no change row.
    }
  }
  try {
    result.bundle.correlation =
        tempo_duration_correlation(result.bundle.changes);
  } catch (const DomainError&) {
    result.bundle.correlation.reset();
  }

  std::set<std::string> categories;
  for (const MovementReport& report : result.bundle.movements) {
    for (const LabeledCluster& cluster : report.clusters) {
      for (const std::string& id : cluster.member_ids) {
        for (const auto& [category, value] :
             corpus.recordings.at(id).background) {
          categories.insert(category);
        }
      }
    }
  }
  for (const std::string& category : categories) {
    try {
      result.bundle.associations.push_back(
          background_association(result.bundle.movements, corpus, category));
    } catch (const DomainError&) {
      // Fewer than 2x2 filled cells; no test is possible for this category.
    }
  }

  return result;
}

}  // namespace tempoclust
