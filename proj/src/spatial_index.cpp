#include "swarm/spatial_index.hpp"

#include <cmath>

#include "swarm/errors.hpp"
#include "swarm/random.hpp"

namespace swarm {

std::size_t SpatialIndex::CellHash::operator()(CellKey k) const noexcept {
  return static_cast<std::size_t>(mix64(static_cast<std::uint64_t>(k.ix) * 0x9e3779b97f4a7c15ULL ^
                                        static_cast<std::uint64_t>(k.iy)));
}

SpatialIndex::SpatialIndex(std::span<const IndexedPoint> points, double radius)
    : cell_size_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConfigError("spatial index radius must be positive and finite");
  }
  for (const auto& pt : points) {
    buckets_[cell_of(pt.position)].push_back(pt);
  }
  size_ = points.size();
}

SpatialIndex::CellKey SpatialIndex::cell_of(Vec2 p) const {
  return {static_cast<std::int64_t>(std::floor(p.x / cell_size_)),
          static_cast<std::int64_t>(std::floor(p.y / cell_size_))};
}

std::vector<std::size_t> SpatialIndex::bucket_sizes() const {
  std::vector<std::size_t> out;
  out.reserve(buckets_.size());
  for (const auto& [key, bucket] : buckets_) out.push_back(bucket.size());
  return out;
}

std::vector<Neighbor> SpatialIndex::neighbors_within(Vec2 p, double r) const {
  std::vector<Neighbor> out;
  neighbors_within(p, r, out);
  return out;
}

void SpatialIndex::neighbors_within(Vec2 p, double r, std::vector<Neighbor>& out) const {
  if (r > cell_size_) {
    throw ContractViolation("query radius exceeds the index cell size");
  }
  out.clear();
  if (buckets_.empty()) return;
  const CellKey c = cell_of(p);
  const double r_sq = r * r;
  for (std::int64_t dy = -1; dy <= 1; ++dy) {
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      auto it = buckets_.find({c.ix + dx, c.iy + dy});
      if (it == buckets_.end()) continue;
      for (const auto& pt : it->second) {
        const Vec2 d = pt.position - p;
        const double dsq = d.norm_sq();
        // The squared test is a prefilter; the reported distance is what callers threshold on.
        if (dsq <= r_sq * (1.0 + 1e-12)) {
          const double dist = d.norm();
          if (dist <= r) out.push_back({pt.id, pt.position, dist});
        }
      }
    }
  }
}

SpatialIndex build_index(std::span<const IndexedPoint> points, double radius) {
  return SpatialIndex(points, radius);
}

}  // namespace swarm
