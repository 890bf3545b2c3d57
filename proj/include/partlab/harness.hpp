#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "partlab/lb_metrics.hpp"
#include "partlab/nbody.hpp"
#include "partlab/partition.hpp"

namespace partlab {

struct Criterion {
  enum class Kind { Periodic, Automatic };
  Kind kind = Kind::Periodic;
  int period = 600;  // Periodic only
};

struct ExperimentSpec {
  SimConfig sim;
  int num_ranks = 16;
  PartitionerKind partitioner = PartitionerKind::NoRCB;
  Criterion criterion;
  CostModel cost_model;
  double threshold = 1e-3;  // NoRCB mean-velocity fallback threshold
  int hsfc_order = 10;
  int rank_every = 500;  // compare: iteration stride of rank samples
  std::string output_dir;

  void validate() const;
};

struct RunResult {
  std::vector<IterationRecord> trace;
  std::vector<LbEvent> events;
  EffortSeries effort;
  double modeled_time = 0.0;
  int lb_call_count = 0;
  std::uint64_t seed = 0;
};

/// Runs one experiment: partition at iteration 0, then step / migrate /
/// record per iteration, repartitioning whenever the criterion fires.
RunResult run(const ExperimentSpec& spec);

struct ComparisonEntry {
  std::string name;
  PartitionerKind kind = PartitionerKind::NoRCB;
  RunResult result;
};

struct RankSample {
  int k = 0;
  std::vector<RankedEffort> order;
};

struct ComparisonReport {
  std::vector<ComparisonEntry> entries;
  std::string winner;  // argmin of modeled time, ties lexicographic
  std::vector<RankSample> rank_samples;
};

/// Runs every spec and ranks the partitioners. All specs must share the
/// same simulation config (including the seed) and differ in partitioner.
ComparisonReport compare(std::span<const ExperimentSpec> specs);

/// Writes iterations.csv, events.csv, effort.csv and summary.json.
void emit_traces(const RunResult& result, const ExperimentSpec& spec,
                 const std::filesystem::path& dir, bool per_rank_work = false);

/// Writes per-algorithm traces plus ranks.csv and comparison.json.
void emit_comparison(const ComparisonReport& report,
                     std::span<const ExperimentSpec> specs,
                     const std::filesystem::path& dir,
                     bool per_rank_work = false);

}  // namespace partlab
