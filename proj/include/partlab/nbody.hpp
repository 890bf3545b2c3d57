#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "partlab/geometry.hpp"
#include "partlab/particle.hpp"
#include "partlab/partition.hpp"

namespace partlab {

enum class Scenario { ContractionToy, Contraction, Gravity, RotationContraction };

std::string_view to_string(Scenario scenario);
std::optional<Scenario> scenario_from_string(std::string_view name);

struct SimConfig {
  Rect domain{{0.0, 0.0}, {1.0, 1.0}};
  int n = 5000;
  double dt = 5e-4;
  int steps = 3000;  // iteration count gamma
  double epsilon = 1.0;
  double sigma = 1e-2;
  double r_cut = 2.5e-2;
  Scenario scenario = Scenario::ContractionToy;
  double force_strength = 1.5;
  std::uint64_t rng_seed = 1;
  // scenario shape knobs
  double v0 = 0.1;           // Gravity initial speed range
  double omega = 4.0;        // RotationContraction angular velocity
  double disk_radius = 0.0;  // 0 = 0.35 * min(domain extent)

  double effective_disk_radius() const;
  void validate() const;
};

/// Uniform cell grid over the domain with cell_size >= r_cut, so every
/// pair within r_cut lies in the same or an adjacent cell.
class CellGrid {
 public:
  CellGrid() = default;
  CellGrid(const Rect& domain, double r_cut);

  void build(std::span<const Particle> particles);

  double cell_size() const { return cell_size_; }

  /// Visits every unordered pair (i, j), i and j particle ids, with
  /// distance strictly less than r_cut. Deterministic visiting order.
  template <typename Fn>
  void for_each_pair(std::span<const Particle> particles, double r_cut,
                     Fn&& fn) const {
    const double r2 = r_cut * r_cut;
    auto visit_pair = [&](int a, int b) {
      if (norm_sq(particles[a].position - particles[b].position) < r2) {
        fn(a, b);
      }
    };
    // half stencil: each unordered cell pair is enumerated exactly once
    static constexpr int kOffsets[4][2] = {{1, 0}, {-1, 1}, {0, 1}, {1, 1}};
    for (int cy = 0; cy < ny_; ++cy) {
      for (int cx = 0; cx < nx_; ++cx) {
        const auto& cell = cells_[cell_index(cx, cy)];
        for (std::size_t a = 0; a < cell.size(); ++a) {
          for (std::size_t b = a + 1; b < cell.size(); ++b) {
            visit_pair(cell[a], cell[b]);
          }
        }
        for (const auto& off : kOffsets) {
          const int ox = cx + off[0];
          const int oy = cy + off[1];
          if (ox < 0 || ox >= nx_ || oy < 0 || oy >= ny_) continue;
          const auto& other = cells_[cell_index(ox, oy)];
          for (int a : cell) {
            for (int b : other) {
              visit_pair(a, b);
            }
          }
        }
      }
    }
  }

 private:
  int cell_index(int cx, int cy) const { return cy * nx_ + cx; }
  int cell_of(Vec2 p) const;

  Rect domain_{{0.0, 0.0}, {1.0, 1.0}};
  double cell_size_ = 1.0;
  int nx_ = 1;
  int ny_ = 1;
  std::vector<std::vector<int>> cells_;
};

/// Truncated Lennard-Jones force on the particle at offset `delta` from its
/// neighbour. Zero at or beyond r_cut; magnitude clamped below 0.5*sigma.
Vec2 lj_force(Vec2 delta, double epsilon, double sigma, double r_cut);

using ExternalForce = std::function<Vec2(const Particle&)>;

/// Per-particle external force field of the configured scenario.
Vec2 scenario_force(const SimConfig& config, Vec2 position);

/// Deterministic initial particle set for the configured scenario.
std::vector<Particle> make_scenario(const SimConfig& config);

std::vector<Vec2> compute_forces(std::span<const Particle> particles,
                                 const CellGrid& grid, const SimConfig& config,
                                 const ExternalForce& external);

/// One velocity-Verlet step: half-kick, drift with reflective walls, grid
/// rebuild, force recomputation, half-kick. `forces` must hold the forces
/// at the entry positions and is updated to the exit positions.
void step(std::vector<Particle>& particles, std::vector<Vec2>& forces,
          CellGrid& grid, const SimConfig& config,
          const ExternalForce& external);

/// Per-rank work, in interaction counts.
using WorkVector = std::vector<double>;

/// Counts pairs within r_cut per owning rank. A pair owned by one rank
/// charges it once; a pair spanning two ranks charges both (ghost-region
/// recomputation).
WorkVector count_work(std::span<const Particle> particles,
                      const Assignment& assignment, const CellGrid& grid,
                      double r_cut);

/// Owns the particle state, force buffer and cell grid for one experiment.
class Simulation {
 public:
  explicit Simulation(const SimConfig& config);

  void step();

  std::span<const Particle> particles() const { return particles_; }
  const CellGrid& grid() const { return grid_; }
  const SimConfig& config() const { return config_; }

 private:
  SimConfig config_;
  ExternalForce external_;
  std::vector<Particle> particles_;
  std::vector<Vec2> forces_;
  CellGrid grid_;
};

}  // namespace partlab
