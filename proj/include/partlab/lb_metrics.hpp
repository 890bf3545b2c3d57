#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "partlab/nbody.hpp"
#include "partlab/partition.hpp"

namespace partlab {

/// Per-iteration workload snapshot: slowest rank, mean, and the imbalance
/// u = max - mean.
struct IterationRecord {
  int t = 0;
  WorkVector work;
  double max_w = 0.0;
  double mu = 0.0;
  double u = 0.0;

  static IterationRecord from(int t, WorkVector work);
};

struct LbEvent {
  int tau = 0;
  double cost = 0.0;
  PartitionerKind algorithm = PartitionerKind::NoRCB;
  int migrated = 0;
};

struct EffortInterval {
  int tau_start = 0;
  int tau_end = 0;  // exclusive
  double effort = 0.0;
};

/// Contiguous, non-overlapping intervals covering [0, gamma).
struct EffortSeries {
  std::vector<EffortInterval> intervals;

  const EffortInterval& interval_at(int k) const;
};

/// max(work) - mean(work).
double imbalance(std::span<const double> work);

/// True at every positive multiple of period (a balance already happened
/// at iteration 0).
bool periodic_criterion(int t, int period);

/// u_history holds the imbalance of each iteration completed since the
/// last balancing, oldest first. Fires at the first tau where
/// tau*u(tau) - sum(u) reaches the balancing cost; the accumulated term
/// must be strictly positive, so a flat history never fires.
bool automatic_criterion(std::span<const double> u_history, double lb_cost);

/// Average balancing-interval time per iteration: (sum of u + cost) / length.
double effort(std::span<const double> u_interval, double cost);

/// Prefix sums of u(t).
std::vector<double> cumulative_imbalance(std::span<const IterationRecord> trace);

/// Modeled parallel time over [0, gamma): sum of u + sum of event costs +
/// sum of mu. The iteration-0 partition is setup and carries no cost here.
double modeled_parallel_time(std::span<const IterationRecord> trace,
                             std::span<const LbEvent> events, int gamma);

struct CostModel {
  double c_part = 1.0;
  double c_mig = 10.0;
};

/// C = c_part * N + c_mig * migrated, in work units.
double lb_cost(int n_particles, int migrated, const CostModel& model);

/// Splits [0, gamma) at the event taus; each interval is charged the cost
/// of the event that opens it (zero for the initial interval).
EffortSeries build_effort_series(std::span<const IterationRecord> trace,
                                 std::span<const LbEvent> events, int gamma);

struct RankedEffort {
  std::string name;
  double effort = 0.0;
};

/// Orders algorithms by the effort of their interval containing iteration
/// k, ascending; ties break lexicographically by name.
std::vector<RankedEffort> rank_at(
    int k, std::span<const std::pair<std::string, EffortSeries>> series);

}  // namespace partlab
