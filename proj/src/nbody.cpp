#include "partlab/nbody.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "partlab/rng.hpp"

namespace partlab {

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::ContractionToy: return "contraction_toy";
    case Scenario::Contraction: return "contraction";
    case Scenario::Gravity: return "gravity";
    case Scenario::RotationContraction: return "rotation_contraction";
  }
  return "unknown";
}

std::optional<Scenario> scenario_from_string(std::string_view name) {
  if (name == "contraction_toy") return Scenario::ContractionToy;
  if (name == "contraction") return Scenario::Contraction;
  if (name == "gravity") return Scenario::Gravity;
  if (name == "rotation_contraction") return Scenario::RotationContraction;
  return std::nullopt;
}

double SimConfig::effective_disk_radius() const {
  if (disk_radius > 0.0) return disk_radius;
  return 0.35 * std::min(domain.width(), domain.height());
}

void SimConfig::validate() const {
  if (n < 1) throw std::invalid_argument("config: n must be positive");
  if (dt <= 0.0) throw std::invalid_argument("config: dt must be positive");
  if (steps < 1) throw std::invalid_argument("config: steps must be >= 1");
  if (sigma <= 0.0) throw std::invalid_argument("config: sigma must be positive");
  if (r_cut < sigma) throw std::invalid_argument("config: r_cut must be >= sigma");
  if (domain.width() <= 0.0 || domain.height() <= 0.0) {
    throw std::invalid_argument("config: empty domain");
  }
}

CellGrid::CellGrid(const Rect& domain, double r_cut)
    : domain_(domain), cell_size_(r_cut) {
  if (r_cut <= 0.0) throw std::invalid_argument("CellGrid: r_cut must be positive");
  nx_ = std::max(1, static_cast<int>(std::ceil(domain.width() / r_cut)));
  ny_ = std::max(1, static_cast<int>(std::ceil(domain.height() / r_cut)));
  cells_.resize(static_cast<std::size_t>(nx_) * ny_);
}

int CellGrid::cell_of(Vec2 p) const {
  const int cx = std::clamp(
      static_cast<int>(std::floor((p.x - domain_.min.x) / cell_size_)), 0,
      nx_ - 1);
  const int cy = std::clamp(
      static_cast<int>(std::floor((p.y - domain_.min.y) / cell_size_)), 0,
      ny_ - 1);
  return cell_index(cx, cy);
}

void CellGrid::build(std::span<const Particle> particles) {
  for (auto& cell : cells_) cell.clear();
  for (const Particle& p : particles) {
    cells_[cell_of(p.position)].push_back(p.id);
  }
}

Vec2 lj_force(Vec2 delta, double epsilon, double sigma, double r_cut) {
  const double r = norm(delta);
  if (r == 0.0) {
    throw std::invalid_argument("lj_force: zero separation");
  }
  if (r >= r_cut) {
    return {0.0, 0.0};
  }
  const double r_eff = std::max(r, 0.5 * sigma);  // overflow guard
  const double sr2 = (sigma / r_eff) * (sigma / r_eff);
  const double sr6 = sr2 * sr2 * sr2;
  const double magnitude = 24.0 * epsilon * (2.0 * sr6 * sr6 - sr6) / r_eff;
  return delta * (magnitude / r);
}

Vec2 scenario_force(const SimConfig& config, Vec2 position) {
  switch (config.scenario) {
    case Scenario::ContractionToy:
    case Scenario::Contraction:
    case Scenario::RotationContraction: {
      const Vec2 d = position - config.domain.center();
      const double n = norm(d);
      if (n == 0.0) return {0.0, 0.0};
      return d * (-config.force_strength / n);
    }
    case Scenario::Gravity:
      return {0.0, -config.force_strength};
  }
  return {0.0, 0.0};
}

namespace {

/// Draws positions from `sample` but rejects candidates closer than
/// min_dist to an already placed one. Keeps the cold start free of deep
/// Lennard-Jones overlaps, which would otherwise inject huge energy.
std::vector<Vec2> place_min_distance(int n, double min_dist, const Rect& cover,
                                     Rng& rng,
                                     const std::function<Vec2(Rng&)>& sample) {
  const double cell = std::max(min_dist, 1e-12);
  const int nx = std::max(1, static_cast<int>(std::ceil(cover.width() / cell)));
  const int ny = std::max(1, static_cast<int>(std::ceil(cover.height() / cell)));
  std::vector<std::vector<int>> cells(static_cast<std::size_t>(nx) * ny);
  auto cell_x = [&](double x) {
    return std::clamp(static_cast<int>(std::floor((x - cover.min.x) / cell)), 0,
                      nx - 1);
  };
  auto cell_y = [&](double y) {
    return std::clamp(static_cast<int>(std::floor((y - cover.min.y) / cell)), 0,
                      ny - 1);
  };

  std::vector<Vec2> out;
  out.reserve(n);
  const double d2 = min_dist * min_dist;
  const long max_attempts = 1000L * n + 1000L;
  long attempts = 0;
  while (static_cast<int>(out.size()) < n) {
    if (++attempts > max_attempts) {
      throw std::runtime_error(
          "make_scenario: cannot place particles at least sigma apart; "
          "reduce sigma or n");
    }
    const Vec2 candidate = sample(rng);
    const int cx = cell_x(candidate.x);
    const int cy = cell_y(candidate.y);
    bool ok = true;
    for (int oy = std::max(0, cy - 1); ok && oy <= std::min(ny - 1, cy + 1); ++oy) {
      for (int ox = std::max(0, cx - 1); ok && ox <= std::min(nx - 1, cx + 1); ++ox) {
        for (int idx : cells[static_cast<std::size_t>(oy) * nx + ox]) {
          if (norm_sq(out[idx] - candidate) < d2) {
            ok = false;
            break;
          }
        }
      }
    }
    if (!ok) continue;
    cells[static_cast<std::size_t>(cy) * nx + cx].push_back(
        static_cast<int>(out.size()));
    out.push_back(candidate);
  }
  return out;
}

}  // namespace

std::vector<Particle> make_scenario(const SimConfig& config) {
  config.validate();
  Rng rng(config.rng_seed);
  const Vec2 c = config.domain.center();
  const double radius = config.effective_disk_radius();

  auto disk_sample = [&](Rng& r) {
    const double rho = radius * std::sqrt(r.uniform());
    const double theta = 2.0 * std::numbers::pi * r.uniform();
    return c + Vec2{rho * std::cos(theta), rho * std::sin(theta)};
  };

  std::vector<Vec2> positions;
  switch (config.scenario) {
    case Scenario::ContractionToy:
    case Scenario::Contraction:
    case Scenario::RotationContraction: {
      const Rect cover{c - Vec2{radius, radius}, c + Vec2{radius, radius}};
      positions = place_min_distance(config.n, config.sigma, cover, rng,
                                     disk_sample);
      break;
    }
    case Scenario::Gravity: {
      const Rect box{config.domain.min,
                     {config.domain.min.x + 0.5 * config.domain.width(),
                      config.domain.max.y}};
      auto box_sample = [&](Rng& r) {
        return Vec2{r.uniform(box.min.x, box.max.x),
                    r.uniform(box.min.y, box.max.y)};
      };
      positions = place_min_distance(config.n, config.sigma, box, rng,
                                     box_sample);
      break;
    }
  }

  std::vector<Particle> particles;
  particles.reserve(config.n);
  for (int i = 0; i < config.n; ++i) {
    Vec2 velocity{0.0, 0.0};
    switch (config.scenario) {
      case Scenario::ContractionToy:
      case Scenario::Contraction:
        break;
      case Scenario::Gravity:
        velocity = {rng.uniform(-config.v0, config.v0),
                    rng.uniform(-config.v0, config.v0)};
        break;
      case Scenario::RotationContraction:
        velocity = perp(positions[i] - c) * config.omega;
        break;
    }
    particles.push_back({i, positions[i], velocity});
  }
  return particles;
}

std::vector<Vec2> compute_forces(std::span<const Particle> particles,
                                 const CellGrid& grid, const SimConfig& config,
                                 const ExternalForce& external) {
  std::vector<Vec2> forces(particles.size(), Vec2{0.0, 0.0});
  grid.for_each_pair(particles, config.r_cut, [&](int i, int j) {
    const Vec2 f = lj_force(particles[i].position - particles[j].position,
                            config.epsilon, config.sigma, config.r_cut);
    forces[i] += f;
    forces[j] -= f;
  });
  if (external) {
    for (std::size_t i = 0; i < particles.size(); ++i) {
      forces[i] += external(particles[i]);
    }
  }
  return forces;
}

namespace {

void reflect_axis(double& pos, double& vel, double lo, double hi) {
  while (pos < lo || pos > hi) {
    if (pos < lo) {
      pos = 2.0 * lo - pos;
      vel = -vel;
    } else {
      pos = 2.0 * hi - pos;
      vel = -vel;
    }
  }
}

}  // namespace

void step(std::vector<Particle>& particles, std::vector<Vec2>& forces,
          CellGrid& grid, const SimConfig& config,
          const ExternalForce& external) {
  const double half_dt = 0.5 * config.dt;
  for (std::size_t i = 0; i < particles.size(); ++i) {
    particles[i].velocity += forces[i] * half_dt;
    particles[i].position += particles[i].velocity * config.dt;
    reflect_axis(particles[i].position.x, particles[i].velocity.x,
                 config.domain.min.x, config.domain.max.x);
    reflect_axis(particles[i].position.y, particles[i].velocity.y,
                 config.domain.min.y, config.domain.max.y);
  }
  grid.build(particles);
  forces = compute_forces(particles, grid, config, external);
  for (std::size_t i = 0; i < particles.size(); ++i) {
    particles[i].velocity += forces[i] * half_dt;
  }
}

WorkVector count_work(std::span<const Particle> particles,
                      const Assignment& assignment, const CellGrid& grid,
                      double r_cut) {
  WorkVector work(assignment.num_ranks, 0.0);
  grid.for_each_pair(particles, r_cut, [&](int i, int j) {
    const int ri = assignment.rank_of[i];
    const int rj = assignment.rank_of[j];
    work[ri] += 1.0;
    if (rj != ri) {
      work[rj] += 1.0;
    }
  });
  return work;
}

Simulation::Simulation(const SimConfig& config)
    : config_(config),
      external_([cfg = config](const Particle& p) {
        return scenario_force(cfg, p.position);
      }),
      particles_(make_scenario(config)),
      grid_(config.domain, config.r_cut) {
  grid_.build(particles_);
  forces_ = compute_forces(particles_, grid_, config_, external_);
}

void Simulation::step() {
  partlab::step(particles_, forces_, grid_, config_, external_);
}

}  // namespace partlab
