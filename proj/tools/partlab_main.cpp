#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "partlab/config.hpp"
#include "partlab/harness.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string partitioner;
  std::string criterion;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  bool per_rank_work = false;
};

partlab::ExperimentSpec load_spec(const CommonArgs& args) {
  partlab::ExperimentSpec spec = partlab::load_config(args.config_path);
  if (!args.partitioner.empty()) {
    partlab::apply_config_value(spec, "partitioner", args.partitioner);
  }
  if (!args.criterion.empty()) {
    partlab::apply_config_value(spec, "criterion", args.criterion);
  }
  if (args.seed) {
    spec.sim.rng_seed = *args.seed;
  }
  if (!args.out_dir.empty()) {
    spec.output_dir = args.out_dir;
  }
  return spec;
}

void print_summary(const std::string& name, const partlab::RunResult& result) {
  std::cout << name << ": modeled_time=" << result.modeled_time
            << " lb_calls=" << result.lb_call_count
            << " final_cumulative_u="
            << partlab::cumulative_imbalance(result.trace).back() << "\n";
}

int run_command(const CommonArgs& args) {
  partlab::ExperimentSpec spec = load_spec(args);
  const partlab::RunResult result = partlab::run(spec);
  print_summary(std::string(partlab::to_string(spec.partitioner)), result);
  if (!spec.output_dir.empty()) {
    partlab::emit_traces(result, spec, spec.output_dir, args.per_rank_work);
    std::cout << "traces written to " << spec.output_dir << "\n";
  }
  return 0;
}

int compare_command(const CommonArgs& args, const std::string& partitioners) {
  partlab::ExperimentSpec base = load_spec(args);
  std::vector<partlab::ExperimentSpec> specs;
  std::istringstream in(partitioners);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name.empty()) continue;
    partlab::ExperimentSpec spec = base;
    partlab::apply_config_value(spec, "partitioner", name);
    specs.push_back(std::move(spec));
  }
  if (specs.size() < 2) {
    throw std::invalid_argument("compare: need at least two partitioners");
  }
  const partlab::ComparisonReport report = partlab::compare(specs);
  for (const partlab::ComparisonEntry& entry : report.entries) {
    print_summary(entry.name, entry.result);
  }
  std::cout << "winner: " << report.winner << "\n";
  if (!base.output_dir.empty()) {
    partlab::emit_comparison(report, specs, base.output_dir,
                             args.per_rank_work);
    std::cout << "traces written to " << base.output_dir << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partitioning laboratory for particle simulations"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string partitioners;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", args.config_path, "experiment config file")
        ->required();
    cmd->add_option("--criterion", args.criterion,
                    "periodic:<p> or auto (overrides config)");
    cmd->add_option("--seed", args.seed, "RNG seed (overrides config)");
    cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
    cmd->add_flag("--per-rank-work", args.per_rank_work,
                  "include per-rank work columns in iterations.csv");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run one experiment");
  add_common(run_cmd);
  run_cmd->add_option("--partitioner", args.partitioner,
                      "norcb|rcb|rib|hsfc (overrides config)");

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "run several partitioners on one seed");
  add_common(compare_cmd);
  compare_cmd
      ->add_option("--partitioners", partitioners,
                   "comma-separated list, e.g. norcb,rcb,rib,hsfc")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      return run_command(args);
    }
    return compare_command(args, partitioners);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
