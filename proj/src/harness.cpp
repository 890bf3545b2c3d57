#include "partlab/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace partlab {

void ExperimentSpec::validate() const {
  sim.validate();
  if (num_ranks < 1) {
    throw std::invalid_argument("spec: rank count must be positive");
  }
  if (partitioner != PartitionerKind::HSFC &&
      (num_ranks & (num_ranks - 1)) != 0) {
    throw std::invalid_argument(
        "spec: bisection partitioners need a power-of-two rank count");
  }
  if (num_ranks > sim.n) {
    throw std::invalid_argument("spec: more ranks than particles");
  }
  if (criterion.kind == Criterion::Kind::Periodic && criterion.period < 1) {
    throw std::invalid_argument("spec: period must be >= 1");
  }
  if (threshold <= 0.0) {
    throw std::invalid_argument("spec: threshold must be positive");
  }
  if (hsfc_order < 1 || hsfc_order > 16) {
    throw std::invalid_argument("spec: hsfc_order must be in [1, 16]");
  }
  if (rank_every < 1) {
    throw std::invalid_argument("spec: rank_every must be >= 1");
  }
}

namespace {

int count_migrated(const Assignment& before, const Assignment& after) {
  int migrated = 0;
  for (std::size_t i = 0; i < before.rank_of.size(); ++i) {
    if (before.rank_of[i] != after.rank_of[i]) ++migrated;
  }
  return migrated;
}

}  // namespace

RunResult run(const ExperimentSpec& spec) {
  spec.validate();
  Simulation sim(spec.sim);
  const int gamma = spec.sim.steps;
  const int n = spec.sim.n;

  PartitionResult partition =
      make_partition(spec.partitioner, sim.particles(), spec.num_ranks,
                     spec.threshold, spec.hsfc_order);
  // Cost estimate the automatic criterion compares against: the cost of
  // the most recent partition call. The initial one placed every particle.
  double last_cost = lb_cost(n, n, spec.cost_model);

  RunResult result;
  result.seed = spec.sim.rng_seed;
  result.trace.reserve(gamma);
  std::vector<double> u_history;

  for (int t = 0; t < gamma; ++t) {
    sim.step();
    for (const Particle& p : sim.particles()) {
      partition.assignment.rank_of[p.id] = locate(partition.tess, p.position);
    }
    WorkVector work = count_work(sim.particles(), partition.assignment,
                                 sim.grid(), spec.sim.r_cut);
    result.trace.push_back(IterationRecord::from(t, std::move(work)));
    u_history.push_back(result.trace.back().u);

    const bool fire =
        t > 0 && (spec.criterion.kind == Criterion::Kind::Periodic
                      ? periodic_criterion(t, spec.criterion.period)
                      : automatic_criterion(u_history, last_cost));
    if (fire) {
      PartitionResult fresh =
          make_partition(spec.partitioner, sim.particles(), spec.num_ranks,
                         spec.threshold, spec.hsfc_order);
      const int migrated =
          count_migrated(partition.assignment, fresh.assignment);
      const double cost = lb_cost(n, migrated, spec.cost_model);
      result.events.push_back({t, cost, spec.partitioner, migrated});
      partition = std::move(fresh);
      last_cost = cost;
      u_history.clear();
    }
  }

  result.effort = build_effort_series(result.trace, result.events, gamma);
  result.modeled_time = modeled_parallel_time(result.trace, result.events, gamma);
  result.lb_call_count = static_cast<int>(result.events.size());
  return result;
}

namespace {

bool same_sim_config(const SimConfig& a, const SimConfig& b) {
  return a.domain.min == b.domain.min && a.domain.max == b.domain.max &&
         a.n == b.n && a.dt == b.dt && a.steps == b.steps &&
         a.epsilon == b.epsilon && a.sigma == b.sigma && a.r_cut == b.r_cut &&
         a.scenario == b.scenario && a.force_strength == b.force_strength &&
         a.rng_seed == b.rng_seed && a.v0 == b.v0 && a.omega == b.omega &&
         a.disk_radius == b.disk_radius;
}

}  // namespace

ComparisonReport compare(std::span<const ExperimentSpec> specs) {
  if (specs.size() < 2) {
    throw std::invalid_argument("compare: need at least two specs");
  }
  for (const ExperimentSpec& spec : specs) {
    if (!same_sim_config(spec.sim, specs[0].sim)) {
      throw std::invalid_argument(
          "compare: all specs must share the simulation config and seed");
    }
  }

  ComparisonReport report;
  for (const ExperimentSpec& spec : specs) {
    ComparisonEntry entry;
    entry.kind = spec.partitioner;
    entry.name = std::string(to_string(spec.partitioner));
    entry.result = run(spec);
    report.entries.push_back(std::move(entry));
  }

  const ComparisonEntry* best = &report.entries.front();
  for (const ComparisonEntry& entry : report.entries) {
    if (entry.result.modeled_time < best->result.modeled_time ||
        (entry.result.modeled_time == best->result.modeled_time &&
         entry.name < best->name)) {
      best = &entry;
    }
  }
  report.winner = best->name;

  std::vector<std::pair<std::string, EffortSeries>> series;
  series.reserve(report.entries.size());
  for (const ComparisonEntry& entry : report.entries) {
    series.emplace_back(entry.name, entry.result.effort);
  }
  const int gamma = specs[0].sim.steps;
  for (int k = 0; k < gamma; k += specs[0].rank_every) {
    report.rank_samples.push_back({k, rank_at(k, series)});
  }
  return report;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  return out;
}

nlohmann::json config_json(const ExperimentSpec& spec) {
  const SimConfig& sim = spec.sim;
  nlohmann::json j;
  j["scenario"] = std::string(to_string(sim.scenario));
  j["n"] = sim.n;
  j["domain"] = {sim.domain.min.x, sim.domain.min.y, sim.domain.max.x,
                 sim.domain.max.y};
  j["dt"] = sim.dt;
  j["steps"] = sim.steps;
  j["epsilon"] = sim.epsilon;
  j["sigma"] = sim.sigma;
  j["r_cut"] = sim.r_cut;
  j["force_strength"] = sim.force_strength;
  j["v0"] = sim.v0;
  j["omega"] = sim.omega;
  j["disk_radius"] = sim.effective_disk_radius();
  j["seed"] = sim.rng_seed;
  j["p"] = spec.num_ranks;
  j["partitioner"] = std::string(to_string(spec.partitioner));
  j["criterion"] = spec.criterion.kind == Criterion::Kind::Periodic
                       ? "periodic:" + std::to_string(spec.criterion.period)
                       : "auto";
  j["c_part"] = spec.cost_model.c_part;
  j["c_mig"] = spec.cost_model.c_mig;
  j["threshold"] = spec.threshold;
  j["hsfc_order"] = spec.hsfc_order;
  return j;
}

}  // namespace

void emit_traces(const RunResult& result, const ExperimentSpec& spec,
                 const std::filesystem::path& dir, bool per_rank_work) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output dir: " + dir.string());
  }

  {
    auto out = open_out(dir / "iterations.csv");
    out << "iteration,max_work,mean_work,u,cumulative_u";
    if (per_rank_work) {
      for (int r = 0; r < spec.num_ranks; ++r) out << ",work_" << r;
    }
    out << "\n";
    double cumulative = 0.0;
    for (const IterationRecord& rec : result.trace) {
      cumulative += rec.u;
      out << rec.t << ',' << fmt_double(rec.max_w) << ',' << fmt_double(rec.mu)
          << ',' << fmt_double(rec.u) << ',' << fmt_double(cumulative);
      if (per_rank_work) {
        for (double w : rec.work) out << ',' << fmt_double(w);
      }
      out << "\n";
    }
  }
  {
    auto out = open_out(dir / "events.csv");
    out << "tau,cost,migrated,algorithm\n";
    for (const LbEvent& event : result.events) {
      out << event.tau << ',' << fmt_double(event.cost) << ','
          << event.migrated << ',' << to_string(event.algorithm) << "\n";
    }
  }
  {
    auto out = open_out(dir / "effort.csv");
    out << "tau_start,tau_end,effort\n";
    for (const EffortInterval& interval : result.effort.intervals) {
      out << interval.tau_start << ',' << interval.tau_end << ','
          << fmt_double(interval.effort) << "\n";
    }
  }
  {
    nlohmann::json j;
    j["modeled_time"] = result.modeled_time;
    j["lb_call_count"] = result.lb_call_count;
    j["seed"] = result.seed;
    j["config"] = config_json(spec);
    auto out = open_out(dir / "summary.json");
    out << j.dump(2) << "\n";
  }
}

void emit_comparison(const ComparisonReport& report,
                     std::span<const ExperimentSpec> specs,
                     const std::filesystem::path& dir, bool per_rank_work) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output dir: " + dir.string());
  }
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    emit_traces(report.entries[i].result, specs[i],
                dir / report.entries[i].name, per_rank_work);
  }
  {
    auto out = open_out(dir / "ranks.csv");
    out << "k,position,algorithm,effort\n";
    for (const RankSample& sample : report.rank_samples) {
      for (std::size_t pos = 0; pos < sample.order.size(); ++pos) {
        out << sample.k << ',' << pos + 1 << ',' << sample.order[pos].name
            << ',' << fmt_double(sample.order[pos].effort) << "\n";
      }
    }
  }
  {
    nlohmann::json j;
    j["winner"] = report.winner;
    j["seed"] = specs[0].sim.rng_seed;
    nlohmann::json algos = nlohmann::json::object();
    for (const ComparisonEntry& entry : report.entries) {
      algos[entry.name] = {{"modeled_time", entry.result.modeled_time},
                           {"lb_call_count", entry.result.lb_call_count}};
    }
    j["algorithms"] = algos;
    auto out = open_out(dir / "comparison.json");
    out << j.dump(2) << "\n";
  }
}

}  // namespace partlab
