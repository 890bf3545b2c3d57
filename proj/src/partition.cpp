#include "partlab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "partlab/hilbert.hpp"
#include "partlab/selection.hpp"

namespace partlab {

std::string_view to_string(PartitionerKind kind) {
  switch (kind) {
    case PartitionerKind::NoRCB: return "norcb";
    case PartitionerKind::RCB: return "rcb";
    case PartitionerKind::RIB: return "rib";
    case PartitionerKind::HSFC: return "hsfc";
  }
  return "unknown";
}

std::optional<PartitionerKind> partitioner_from_string(std::string_view name) {
  if (name == "norcb") return PartitionerKind::NoRCB;
  if (name == "rcb") return PartitionerKind::RCB;
  if (name == "rib") return PartitionerKind::RIB;
  if (name == "hsfc") return PartitionerKind::HSFC;
  return std::nullopt;
}

int PartitionTree::num_leaves() const {
  int count = 0;
  for (const Node& node : nodes) {
    if (node.is_leaf()) ++count;
  }
  return count;
}

int PartitionTree::locate(Vec2 p) const {
  int idx = 0;
  while (!nodes[idx].is_leaf()) {
    const Node& node = nodes[idx];
    idx = side_of(node.cut, p) == Side::LowerOrEqual ? node.left : node.right;
  }
  return nodes[idx].rank;
}

int HsfcChunks::locate(Vec2 p) const {
  const std::uint64_t h = hilbert_index(p, bbox, order);
  const auto it = std::upper_bound(chunk_start.begin(), chunk_start.end(), h);
  return static_cast<int>(it - chunk_start.begin()) - 1;
}

int locate(const Tessellation& tess, Vec2 p) {
  return std::visit([p](const auto& t) { return t.locate(p); }, tess);
}

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

void check_ids_dense(std::span<const Particle> particles) {
  std::vector<char> seen(particles.size(), 0);
  for (const Particle& p : particles) {
    if (p.id < 0 || p.id >= static_cast<int>(particles.size()) || seen[p.id]) {
      throw std::invalid_argument("partition: particle ids must be 0..N-1");
    }
    seen[p.id] = 1;
  }
}

void check_bisection_args(std::span<const Particle> particles, int num_ranks) {
  if (!is_power_of_two(num_ranks)) {
    throw std::invalid_argument("partition: rank count must be a power of two");
  }
  if (num_ranks > static_cast<int>(particles.size())) {
    throw std::invalid_argument("partition: more ranks than particles");
  }
  check_ids_dense(particles);
}

Rect bounding_box(std::span<const Particle> particles,
                  std::span<const int> subset) {
  Rect box{{std::numeric_limits<double>::max(),
            std::numeric_limits<double>::max()},
           {std::numeric_limits<double>::lowest(),
            std::numeric_limits<double>::lowest()}};
  for (int id : subset) {
    const Vec2 p = particles[id].position;
    box.min.x = std::min(box.min.x, p.x);
    box.min.y = std::min(box.min.y, p.y);
    box.max.x = std::max(box.max.x, p.x);
    box.max.y = std::max(box.max.y, p.y);
  }
  return box;
}

Vec2 longest_axis_cut_direction(const Rect& box) {
  return box.width() > box.height() ? Vec2{0.0, 1.0} : Vec2{1.0, 0.0};
}

/// Cut direction for one RIB bisection: perpendicular to the principal
/// axis of the position covariance, so that side_of splits by projection
/// onto the principal axis itself.
Vec2 rib_cut_direction(std::span<const Particle> particles,
                       std::span<const int> subset, const Rect& box) {
  Vec2 centroid{0.0, 0.0};
  for (int id : subset) centroid += particles[id].position;
  centroid = centroid * (1.0 / static_cast<double>(subset.size()));

  double cxx = 0.0, cxy = 0.0, cyy = 0.0;
  for (int id : subset) {
    const Vec2 d = particles[id].position - centroid;
    cxx += d.x * d.x;
    cxy += d.x * d.y;
    cyy += d.y * d.y;
  }
  const double inv_n = 1.0 / static_cast<double>(subset.size());
  cxx *= inv_n;
  cxy *= inv_n;
  cyy *= inv_n;

  const double gap = std::hypot(cxx - cyy, 2.0 * cxy);  // lambda1 - lambda2
  if (gap < 1e-12) {
    return longest_axis_cut_direction(box);
  }
  const double lambda1 = 0.5 * (cxx + cyy + gap);
  Vec2 axis{lambda1 - cyy, cxy};
  if (norm_sq(axis) < 1e-30) {
    axis = {cxy, lambda1 - cxx};
  }
  axis = normalized(axis);
  if (axis.y < 0.0 || (axis.y == 0.0 && axis.x < 0.0)) {
    axis = -axis;
  }
  return perp(axis);
}

/// Chooses the cut direction for the subdomain currently being bisected.
using AxisChooser = std::function<Vec2(std::span<const int>, const Rect&)>;

struct BisectionBuilder {
  std::span<const Particle> particles;
  const AxisChooser& choose_axis;
  std::vector<PartitionTree::Node> nodes;
  std::vector<int> order;  // particle ids, permuted in place by recursion
  Assignment assignment;

  // Bisects order[lo, hi) into ranks [rank_base, rank_base + ranks).
  // Returns the node index.
  int build(std::size_t lo, std::size_t hi, int ranks, int rank_base) {
    const int node_idx = static_cast<int>(nodes.size());
    nodes.emplace_back();
    if (ranks == 1) {
      nodes[node_idx].rank = rank_base;
      for (std::size_t i = lo; i < hi; ++i) {
        assignment.rank_of[order[i]] = rank_base;
      }
      return node_idx;
    }

    const std::span<const int> subset(order.data() + lo, hi - lo);
    const Rect box = bounding_box(particles, subset);
    const Vec2 axis = choose_axis(subset, box);
    const Vec2 direction = normalized(axis);
    const double alpha = angle_to_y(direction);

    std::vector<KeyedItem> keyed(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
      const int id = order[i];
      keyed[i - lo] = {rotate(particles[id].position, alpha).x, id};
    }
    const std::size_t left_count = (keyed.size() + 1) / 2;
    select_nth(keyed, left_count - 1);
    const KeyedItem median = keyed[left_count - 1];
    for (std::size_t i = lo; i < hi; ++i) {
      order[i] = keyed[i - lo].id;
    }

    nodes[node_idx].cut = {particles[median.id].position, direction};
    const int left = build(lo, lo + left_count, ranks / 2, rank_base);
    const int right = build(lo + left_count, hi, ranks / 2, rank_base + ranks / 2);
    nodes[node_idx].left = left;
    nodes[node_idx].right = right;
    return node_idx;
  }
};

TreePartition bisect(std::span<const Particle> particles, int num_ranks,
                     const AxisChooser& choose_axis) {
  check_bisection_args(particles, num_ranks);
  BisectionBuilder builder{particles, choose_axis, {}, {}, {}};
  builder.order.resize(particles.size());
  std::iota(builder.order.begin(), builder.order.end(), 0);
  builder.assignment.rank_of.resize(particles.size(), -1);
  builder.assignment.num_ranks = num_ranks;
  builder.build(0, particles.size(), num_ranks, 0);
  return {PartitionTree{std::move(builder.nodes)},
          std::move(builder.assignment)};
}

}  // namespace

Vec2 mean_velocity_axis(std::span<const Particle> particles, const Rect& bbox,
                        double threshold) {
  if (particles.empty()) {
    throw std::invalid_argument("mean_velocity_axis: empty particle set");
  }
  Vec2 mean{0.0, 0.0};
  for (const Particle& p : particles) {
    mean += p.velocity;
  }
  mean = mean * (1.0 / static_cast<double>(particles.size()));
  if (norm(mean) > threshold) {
    return mean;
  }
  return longest_axis_cut_direction(bbox);
}

TreePartition norcb_partition(std::span<const Particle> particles,
                              int num_ranks, double threshold) {
  std::vector<Particle> subset_buf;
  const AxisChooser chooser = [&](std::span<const int> subset,
                                  const Rect& box) {
    subset_buf.clear();
    subset_buf.reserve(subset.size());
    for (int id : subset) subset_buf.push_back(particles[id]);
    return mean_velocity_axis(subset_buf, box, threshold);
  };
  return bisect(particles, num_ranks, chooser);
}

TreePartition rcb_partition(std::span<const Particle> particles,
                            int num_ranks) {
  const AxisChooser chooser = [](std::span<const int>, const Rect& box) {
    return longest_axis_cut_direction(box);
  };
  return bisect(particles, num_ranks, chooser);
}

TreePartition rib_partition(std::span<const Particle> particles,
                            int num_ranks) {
  const AxisChooser chooser = [&](std::span<const int> subset,
                                  const Rect& box) {
    return rib_cut_direction(particles, subset, box);
  };
  return bisect(particles, num_ranks, chooser);
}

HsfcPartition hsfc_partition(std::span<const Particle> particles,
                             int num_ranks, int order) {
  if (num_ranks < 1) {
    throw std::invalid_argument("hsfc_partition: rank count must be positive");
  }
  if (num_ranks > static_cast<int>(particles.size())) {
    throw std::invalid_argument("hsfc_partition: more ranks than particles");
  }
  check_ids_dense(particles);

  Rect bbox{{std::numeric_limits<double>::max(),
             std::numeric_limits<double>::max()},
            {std::numeric_limits<double>::lowest(),
             std::numeric_limits<double>::lowest()}};
  for (const Particle& p : particles) {
    bbox.min.x = std::min(bbox.min.x, p.position.x);
    bbox.min.y = std::min(bbox.min.y, p.position.y);
    bbox.max.x = std::max(bbox.max.x, p.position.x);
    bbox.max.y = std::max(bbox.max.y, p.position.y);
  }

  struct Entry {
    std::uint64_t h;
    int id;
  };
  std::vector<Entry> entries;
  entries.reserve(particles.size());
  for (const Particle& p : particles) {
    entries.push_back({hilbert_index(p.position, bbox, order), p.id});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.h < b.h || (a.h == b.h && a.id < b.id);
  });

  const std::size_t n = entries.size();
  const std::size_t base = n / num_ranks;
  const std::size_t extra = n % num_ranks;

  HsfcPartition out;
  out.chunks.bbox = bbox;
  out.chunks.order = order;
  out.chunks.chunk_start.resize(num_ranks, 0);
  out.assignment.rank_of.resize(n, -1);
  out.assignment.num_ranks = num_ranks;

  std::size_t pos = 0;
  for (int rank = 0; rank < num_ranks; ++rank) {
    const std::size_t size = base + (static_cast<std::size_t>(rank) < extra ? 1 : 0);
    out.chunks.chunk_start[rank] = rank == 0 ? 0 : entries[pos].h;
    for (std::size_t i = 0; i < size; ++i) {
      out.assignment.rank_of[entries[pos + i].id] = rank;
    }
    pos += size;
  }
  return out;
}

PartitionResult make_partition(PartitionerKind kind,
                               std::span<const Particle> particles,
                               int num_ranks, double threshold,
                               int hsfc_order) {
  switch (kind) {
    case PartitionerKind::NoRCB: {
      auto [tree, assignment] = norcb_partition(particles, num_ranks, threshold);
      return {Tessellation{std::move(tree)}, std::move(assignment)};
    }
    case PartitionerKind::RCB: {
      auto [tree, assignment] = rcb_partition(particles, num_ranks);
      return {Tessellation{std::move(tree)}, std::move(assignment)};
    }
    case PartitionerKind::RIB: {
      auto [tree, assignment] = rib_partition(particles, num_ranks);
      return {Tessellation{std::move(tree)}, std::move(assignment)};
    }
    case PartitionerKind::HSFC: {
      auto [chunks, assignment] = hsfc_partition(particles, num_ranks, hsfc_order);
      return {Tessellation{std::move(chunks)}, std::move(assignment)};
    }
  }
  throw std::invalid_argument("make_partition: unknown partitioner");
}

}  // namespace partlab
