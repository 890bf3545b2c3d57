// Independent reference implementations the tests check against. These
// deliberately avoid the library's code paths: selection is checked with a
// full sort, the Hilbert encoder with the inverse decode, cell-list forces
// and work counts with all-pairs enumeration, and tree lookups with
// explicit half-plane conjunctions.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "partlab/geometry.hpp"
#include "partlab/particle.hpp"
#include "partlab/partition.hpp"
#include "partlab/selection.hpp"

namespace oracle {

inline std::vector<partlab::KeyedItem> sorted(
    std::vector<partlab::KeyedItem> items) {
  std::sort(items.begin(), items.end(),
            [](const partlab::KeyedItem& a, const partlab::KeyedItem& b) {
              return partlab::keyed_less(a, b);
            });
  return items;
}

/// Inverse Hilbert mapping: curve position d -> cell (x, y) on the n x n
/// grid, n a power of two.
inline void hilbert_d2xy(std::uint32_t n, std::uint64_t d, std::uint32_t* x,
                         std::uint32_t* y) {
  std::uint64_t t = d;
  *x = 0;
  *y = 0;
  for (std::uint32_t s = 1; s < n; s <<= 1) {
    const std::uint32_t rx = 1 & static_cast<std::uint32_t>(t / 2);
    const std::uint32_t ry = 1 & static_cast<std::uint32_t>(t ^ rx);
    if (ry == 0) {
      if (rx == 1) {
        *x = s - 1 - *x;
        *y = s - 1 - *y;
      }
      std::swap(*x, *y);
    }
    *x += s * rx;
    *y += s * ry;
    t /= 4;
  }
}

/// Truncated Lennard-Jones pair potential (no shift), zero at or past r_cut.
inline double lj_potential(double r, double epsilon, double sigma,
                           double r_cut) {
  if (r >= r_cut) return 0.0;
  const double sr6 = std::pow(sigma / r, 6);
  return 4.0 * epsilon * (sr6 * sr6 - sr6);
}

/// All unordered pairs with distance strictly below r_cut, by brute force.
inline std::vector<std::pair<int, int>> all_pairs_within(
    std::span<const partlab::Particle> particles, double r_cut) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < particles.size(); ++i) {
    for (std::size_t j = i + 1; j < particles.size(); ++j) {
      if (partlab::norm(particles[i].position - particles[j].position) <
          r_cut) {
        pairs.emplace_back(particles[i].id, particles[j].id);
      }
    }
  }
  return pairs;
}

/// Rank lookup by explicit half-plane conjunction: walks every root-leaf
/// path and returns the rank of the unique leaf whose constraints all hold.
inline int locate_by_halfplanes(const partlab::PartitionTree& tree,
                                partlab::Vec2 p) {
  struct Constraint {
    int node;
    partlab::Side side;
  };
  std::vector<int> matches;
  std::vector<Constraint> path;
  // enumerate leaves via DFS, carrying the path constraints
  struct Frame {
    int node;
    std::size_t depth;
  };
  std::vector<Frame> stack{{0, 0}};
  std::vector<std::pair<int, partlab::Side>> constraints;
  while (!stack.empty()) {
    const Frame frame = stack.back();
    stack.pop_back();
    constraints.resize(frame.depth);
    const auto& node = tree.nodes[frame.node];
    if (node.is_leaf()) {
      bool ok = true;
      for (const auto& [idx, side] : constraints) {
        if (partlab::side_of(tree.nodes[idx].cut, p) != side) {
          ok = false;
          break;
        }
      }
      if (ok) matches.push_back(node.rank);
      continue;
    }
    // right pushed first so the left subtree is explored first
    stack.push_back({node.right, frame.depth + 1});
    stack.push_back({node.left, frame.depth + 1});
    constraints.emplace_back(frame.node, partlab::Side::LowerOrEqual);
  }
  return matches.size() == 1 ? matches.front() : -1;
}

}  // namespace oracle
