#include "partlab/selection.hpp"

#include <stdexcept>
#include <utility>

namespace partlab {
namespace {

KeyedItem median_of_three(KeyedItem a, KeyedItem b, KeyedItem c) {
  if (keyed_less(b, a)) std::swap(a, b);
  if (keyed_less(c, b)) {
    std::swap(b, c);
    if (keyed_less(b, a)) std::swap(a, b);
  }
  return b;
}

}  // namespace

void select_nth(std::span<KeyedItem> items, std::size_t k) {
  if (items.empty()) {
    throw std::out_of_range("select_nth: empty input");
  }
  if (k >= items.size()) {
    throw std::out_of_range("select_nth: rank out of range");
  }
  std::size_t lo = 0;
  std::size_t hi = items.size();
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const KeyedItem pivot = median_of_three(items[lo], items[mid], items[hi - 1]);
    // Three-way partition around the pivot value. With unique ids the
    // equal band is a single element, but duplicates are handled anyway.
    std::size_t lt = lo;
    std::size_t gt = hi;
    std::size_t i = lo;
    while (i < gt) {
      if (keyed_less(items[i], pivot)) {
        std::swap(items[i++], items[lt++]);
      } else if (keyed_less(pivot, items[i])) {
        std::swap(items[i], items[--gt]);
      } else {
        ++i;
      }
    }
    if (k < lt) {
      hi = lt;
    } else if (k >= gt) {
      lo = gt;
    } else {
      return;  // k falls in the equal band
    }
  }
}

KeyedItem kth_smallest(std::vector<KeyedItem> items, std::size_t k) {
  select_nth(items, k);
  return items[k];
}

MedianSplit split_at_median(std::span<const KeyedItem> items) {
  if (items.size() < 2) {
    throw std::invalid_argument("split_at_median: need at least 2 items");
  }
  std::vector<KeyedItem> work(items.begin(), items.end());
  const std::size_t left_count = (work.size() + 1) / 2;
  select_nth(work, left_count - 1);
  MedianSplit split;
  split.left.reserve(left_count);
  split.right.reserve(work.size() - left_count);
  for (std::size_t i = 0; i < work.size(); ++i) {
    (i < left_count ? split.left : split.right).push_back(work[i].id);
  }
  return split;
}

}  // namespace partlab
