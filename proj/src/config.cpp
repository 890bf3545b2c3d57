#include "partlab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace partlab {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for '" + key + "': " + value);
  }
  if (used != value.size()) {
    throw std::invalid_argument("config: bad number for '" + key + "': " + value);
  }
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw std::invalid_argument("config: '" + key + "' must be an integer");
  }
  return i;
}

}  // namespace

Criterion parse_criterion(const std::string& text) {
  if (text == "auto") {
    return {Criterion::Kind::Automatic, 0};
  }
  const std::string prefix = "periodic:";
  if (text.rfind(prefix, 0) == 0) {
    return {Criterion::Kind::Periodic,
            parse_int("criterion", text.substr(prefix.size()))};
  }
  throw std::invalid_argument("config: criterion must be 'periodic:<p>' or 'auto'");
}

void apply_config_value(ExperimentSpec& spec, const std::string& key,
                        const std::string& value) {
  if (key == "scenario") {
    const auto s = scenario_from_string(value);
    if (!s) throw std::invalid_argument("config: unknown scenario: " + value);
    spec.sim.scenario = *s;
  } else if (key == "n") {
    spec.sim.n = parse_int(key, value);
  } else if (key == "domain") {
    std::istringstream in(value);
    Rect d;
    if (!(in >> d.min.x >> d.min.y >> d.max.x >> d.max.y) ||
        !(in >> std::ws).eof()) {
      throw std::invalid_argument("config: domain needs 4 numbers 'xmin ymin xmax ymax'");
    }
    spec.sim.domain = d;
  } else if (key == "dt") {
    spec.sim.dt = parse_double(key, value);
  } else if (key == "steps") {
    spec.sim.steps = parse_int(key, value);
  } else if (key == "epsilon") {
    spec.sim.epsilon = parse_double(key, value);
  } else if (key == "sigma") {
    spec.sim.sigma = parse_double(key, value);
  } else if (key == "r_cut") {
    spec.sim.r_cut = parse_double(key, value);
  } else if (key == "force_strength") {
    spec.sim.force_strength = parse_double(key, value);
  } else if (key == "v0") {
    spec.sim.v0 = parse_double(key, value);
  } else if (key == "omega") {
    spec.sim.omega = parse_double(key, value);
  } else if (key == "disk_radius") {
    spec.sim.disk_radius = parse_double(key, value);
  } else if (key == "seed") {
    spec.sim.rng_seed = static_cast<std::uint64_t>(std::stoull(value));
  } else if (key == "p") {
    spec.num_ranks = parse_int(key, value);
  } else if (key == "partitioner") {
    const auto p = partitioner_from_string(value);
    if (!p) throw std::invalid_argument("config: unknown partitioner: " + value);
    spec.partitioner = *p;
  } else if (key == "criterion") {
    spec.criterion = parse_criterion(value);
  } else if (key == "threshold") {
    spec.threshold = parse_double(key, value);
  } else if (key == "c_part") {
    spec.cost_model.c_part = parse_double(key, value);
  } else if (key == "c_mig") {
    spec.cost_model.c_mig = parse_double(key, value);
  } else if (key == "hsfc_order") {
    spec.hsfc_order = parse_int(key, value);
  } else if (key == "rank_every") {
    spec.rank_every = parse_int(key, value);
  } else if (key == "out") {
    spec.output_dir = value;
  } else {
    throw std::invalid_argument("config: unknown key: " + key);
  }
}

ExperimentSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path.string());
  }
  ExperimentSpec spec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path.string() + ":" +
                                  std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      apply_config_value(spec, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path.string() + ":" +
                                  std::to_string(line_no) + ": " + e.what());
    }
  }
  return spec;
}

}  // namespace partlab
