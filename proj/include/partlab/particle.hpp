#pragma once

#include "partlab/geometry.hpp"

namespace partlab {

struct Particle {
  int id = 0;
  Vec2 position;
  Vec2 velocity;
};

}  // namespace partlab
