#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace partlab {

/// One projected coordinate plus the owning particle id. The id is the
/// tie-breaker, so any collection with unique ids has a total order.
struct KeyedItem {
  double key = 0.0;
  int id = 0;
};

constexpr bool keyed_less(const KeyedItem& a, const KeyedItem& b) {
  return a.key < b.key || (a.key == b.key && a.id < b.id);
}

/// Rearranges items so that items[k] holds the rank-k element under
/// (key, id) order and every element before position k precedes it.
/// Quickselect with median-of-three pivoting; no allocation.
void select_nth(std::span<KeyedItem> items, std::size_t k);

/// Rank-k element under (key, id) order, k is 0-based.
KeyedItem kth_smallest(std::vector<KeyedItem> items, std::size_t k);

struct MedianSplit {
  std::vector<int> left;   // ids of the ceil(N/2) smallest items
  std::vector<int> right;  // ids of the floor(N/2) largest items
};

/// Exact halving: |left| = ceil(N/2), |right| = floor(N/2), every left
/// item precedes every right item under (key, id) order.
MedianSplit split_at_median(std::span<const KeyedItem> items);

}  // namespace partlab
