#include "swarm/geometry.hpp"

#include <algorithm>
#include <cstdio>

#include "swarm/errors.hpp"

namespace swarm {

Region::Region(Vec2 lo, Vec2 hi) : min(lo), max(hi) {
  if (!lo.finite() || !hi.finite() || !(lo.x < hi.x) || !(lo.y < hi.y)) {
    throw ConfigError("region requires min < max componentwise, got min=" + to_string(lo) +
                      " max=" + to_string(hi));
  }
}

double Region::inset_distance(Vec2 p) const {
  return std::min({p.x - min.x, max.x - p.x, p.y - min.y, max.y - p.y});
}

Region Region::padded(double margin) const {
  return Region({min.x - margin, min.y - margin}, {max.x + margin, max.y + margin});
}

UnitDirection unit_toward(Vec2 a, Vec2 b, double eps) {
  const Vec2 d = b - a;
  const double len = d.norm();
  if (!(len > eps)) return {{0.0, 0.0}, true};
  return {d / len, false};
}

std::string to_string(Vec2 v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%g, %g)", v.x, v.y);
  return buf;
}

}  // namespace swarm
