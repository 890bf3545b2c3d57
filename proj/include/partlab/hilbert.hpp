#pragma once

#include <cstdint>

#include "partlab/geometry.hpp"

namespace partlab {

/// Hilbert curve index of cell (cx, cy) on the 2^order x 2^order grid.
std::uint64_t hilbert_cell_index(int order, std::uint32_t cx, std::uint32_t cy);

/// Hilbert index of the grid cell containing p, on the 2^order x 2^order
/// grid laid over bbox. Points outside bbox clamp to the boundary cell.
/// order must be in [1, 16].
std::uint64_t hilbert_index(Vec2 p, const Rect& bbox, int order);

}  // namespace partlab
