#include "partlab/lb_metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace partlab {

IterationRecord IterationRecord::from(int t, WorkVector work) {
  if (work.empty()) {
    throw std::invalid_argument("IterationRecord: empty work vector");
  }
  IterationRecord rec;
  rec.t = t;
  rec.max_w = *std::max_element(work.begin(), work.end());
  double sum = 0.0;
  for (double w : work) sum += w;
  rec.mu = sum / static_cast<double>(work.size());
  rec.u = rec.max_w - rec.mu;
  rec.work = std::move(work);
  return rec;
}

const EffortInterval& EffortSeries::interval_at(int k) const {
  for (const EffortInterval& interval : intervals) {
    if (k >= interval.tau_start && k < interval.tau_end) {
      return interval;
    }
  }
  throw std::out_of_range("EffortSeries: iteration outside all intervals");
}

double imbalance(std::span<const double> work) {
  if (work.empty()) {
    throw std::invalid_argument("imbalance: empty work vector");
  }
  double max_w = work[0];
  double sum = 0.0;
  for (double w : work) {
    max_w = std::max(max_w, w);
    sum += w;
  }
  return max_w - sum / static_cast<double>(work.size());
}

bool periodic_criterion(int t, int period) {
  if (period < 1) {
    throw std::invalid_argument("periodic_criterion: period must be >= 1");
  }
  return t > 0 && t % period == 0;
}

bool automatic_criterion(std::span<const double> u_history, double lb_cost) {
  if (u_history.empty()) {
    throw std::invalid_argument("automatic_criterion: empty history");
  }
  const auto tau = static_cast<double>(u_history.size());
  double sum = 0.0;
  for (double u : u_history) sum += u;
  const double lhs = tau * u_history.back() - sum;
  return lhs > 0.0 && lhs >= lb_cost;
}

double effort(std::span<const double> u_interval, double cost) {
  if (u_interval.empty()) {
    throw std::invalid_argument("effort: empty interval");
  }
  double sum = 0.0;
  for (double u : u_interval) sum += u;
  return (sum + cost) / static_cast<double>(u_interval.size());
}

std::vector<double> cumulative_imbalance(
    std::span<const IterationRecord> trace) {
  if (trace.empty()) {
    throw std::invalid_argument("cumulative_imbalance: empty trace");
  }
  std::vector<double> sums;
  sums.reserve(trace.size());
  double running = 0.0;
  for (const IterationRecord& rec : trace) {
    running += rec.u;
    sums.push_back(running);
  }
  return sums;
}

double modeled_parallel_time(std::span<const IterationRecord> trace,
                             std::span<const LbEvent> events, int gamma) {
  if (static_cast<int>(trace.size()) != gamma) {
    throw std::invalid_argument("modeled_parallel_time: trace must cover [0, gamma)");
  }
  double total = 0.0;
  for (const IterationRecord& rec : trace) {
    total += rec.u;
  }
  for (const LbEvent& event : events) {
    total += event.cost;
  }
  for (const IterationRecord& rec : trace) {
    total += rec.mu;
  }
  return total;
}

double lb_cost(int n_particles, int migrated, const CostModel& model) {
  return model.c_part * static_cast<double>(n_particles) +
         model.c_mig * static_cast<double>(migrated);
}

EffortSeries build_effort_series(std::span<const IterationRecord> trace,
                                 std::span<const LbEvent> events, int gamma) {
  if (static_cast<int>(trace.size()) != gamma) {
    throw std::invalid_argument("build_effort_series: trace must cover [0, gamma)");
  }
  EffortSeries series;
  int start = 0;
  double cost = 0.0;  // the iteration-0 partition is setup, not an event
  auto close_interval = [&](int end) {
    std::vector<double> u;
    u.reserve(end - start);
    for (int t = start; t < end; ++t) u.push_back(trace[t].u);
    series.intervals.push_back({start, end, effort(u, cost)});
  };
  for (const LbEvent& event : events) {
    if (event.tau <= start || event.tau >= gamma) {
      throw std::invalid_argument("build_effort_series: event taus must be strictly increasing in (0, gamma)");
    }
    close_interval(event.tau);
    start = event.tau;
    cost = event.cost;
  }
  close_interval(gamma);
  return series;
}

std::vector<RankedEffort> rank_at(
    int k, std::span<const std::pair<std::string, EffortSeries>> series) {
  std::vector<RankedEffort> ranked;
  ranked.reserve(series.size());
  for (const auto& [name, s] : series) {
    ranked.push_back({name, s.interval_at(k).effort});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const RankedEffort& a, const RankedEffort& b) {
              return a.effort < b.effort ||
                     (a.effort == b.effort && a.name < b.name);
            });
  return ranked;
}

}  // namespace partlab
