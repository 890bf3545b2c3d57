#include "partlab/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace partlab {

std::uint64_t hilbert_cell_index(int order, std::uint32_t cx, std::uint32_t cy) {
  std::uint64_t d = 0;
  for (std::uint32_t s = 1u << (order - 1); s > 0; s >>= 1) {
    const std::uint32_t rx = (cx & s) ? 1 : 0;
    const std::uint32_t ry = (cy & s) ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    // rotate/flip the quadrant
    if (ry == 0) {
      if (rx == 1) {
        cx = s - 1 - cx;
        cy = s - 1 - cy;
      }
      std::swap(cx, cy);
    }
  }
  return d;
}

namespace {

std::uint32_t cell_coord(double value, double lo, double hi, std::uint32_t n) {
  const double extent = hi - lo;
  if (extent <= 0.0) {
    return 0;
  }
  const double f = (value - lo) / extent;
  const auto c = static_cast<std::int64_t>(std::floor(f * n));
  return static_cast<std::uint32_t>(std::clamp<std::int64_t>(c, 0, n - 1));
}

}  // namespace

std::uint64_t hilbert_index(Vec2 p, const Rect& bbox, int order) {
  if (order < 1 || order > 16) {
    throw std::invalid_argument("hilbert_index: order must be in [1, 16]");
  }
  const std::uint32_t n = 1u << order;
  const std::uint32_t cx = cell_coord(p.x, bbox.min.x, bbox.max.x, n);
  const std::uint32_t cy = cell_coord(p.y, bbox.min.y, bbox.max.y, n);
  return hilbert_cell_index(order, cx, cy);
}

}  // namespace partlab
