#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "partlab/geometry.hpp"
#include "partlab/particle.hpp"

namespace partlab {

enum class PartitionerKind { NoRCB, RCB, RIB, HSFC };

std::string_view to_string(PartitionerKind kind);
std::optional<PartitionerKind> partitioner_from_string(std::string_view name);

/// Ownership map. Particle ids must be exactly 0..N-1; rank_of is indexed
/// by id.
struct Assignment {
  std::vector<int> rank_of;
  int num_ranks = 0;
};

/// Binary tree of oriented cuts. Internal nodes carry a Cut, leaves carry a
/// rank; LowerOrEqual descends into the left child.
struct PartitionTree {
  struct Node {
    Cut cut;
    int left = -1;
    int right = -1;
    int rank = -1;

    bool is_leaf() const { return left < 0; }
  };

  std::vector<Node> nodes;  // root at index 0

  int num_leaves() const;
  int locate(Vec2 p) const;
};

/// HSFC tessellation: P contiguous chunks of the Hilbert-sorted sequence.
/// chunk_start[i] is the Hilbert index at which chunk i begins
/// (chunk_start[0] == 0); a point belongs to the last chunk whose start
/// does not exceed its own index.
struct HsfcChunks {
  Rect bbox;
  int order = 10;
  std::vector<std::uint64_t> chunk_start;

  int locate(Vec2 p) const;
};

using Tessellation = std::variant<PartitionTree, HsfcChunks>;

int locate(const Tessellation& tess, Vec2 p);

/// Arithmetic mean velocity if its norm exceeds threshold; otherwise the
/// unit direction that cuts across the longest bbox axis: (0,1) when the
/// bbox is wider than tall, (1,0) otherwise.
Vec2 mean_velocity_axis(std::span<const Particle> particles, const Rect& bbox,
                        double threshold);

struct TreePartition {
  PartitionTree tree;
  Assignment assignment;
};

/// Non-orthogonal recursive bisection: every cut runs parallel to the mean
/// velocity of its subdomain, through the median workload point. Falls back
/// to the longest-axis direction where the mean velocity norm is at or
/// below threshold. num_ranks must be a power of two, <= particle count.
TreePartition norcb_partition(std::span<const Particle> particles,
                              int num_ranks, double threshold);

/// Classical recursive coordinate bisection: axis-aligned cuts across the
/// longest axis of the subdomain bounding box, at the exact median.
TreePartition rcb_partition(std::span<const Particle> particles,
                            int num_ranks);

/// Recursive inertial bisection: splits by projection onto the principal
/// axis of the position covariance, at the exact median. Degenerate
/// covariance (eigengap below 1e-12) falls back to the longest-axis cut.
TreePartition rib_partition(std::span<const Particle> particles,
                            int num_ranks);

struct HsfcPartition {
  HsfcChunks chunks;
  Assignment assignment;
};

/// Hilbert space-filling-curve partition: sort by (hilbert index, id) and
/// cut into num_ranks contiguous chunks whose sizes differ by at most one.
/// Accepts any num_ranks in [1, N].
HsfcPartition hsfc_partition(std::span<const Particle> particles,
                             int num_ranks, int order);

struct PartitionResult {
  Tessellation tess;
  Assignment assignment;
};

PartitionResult make_partition(PartitionerKind kind,
                               std::span<const Particle> particles,
                               int num_ranks, double threshold,
                               int hsfc_order);

}  // namespace partlab
