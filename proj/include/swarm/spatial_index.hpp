#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "swarm/geometry.hpp"

namespace swarm {

using AgentId = std::uint32_t;

struct IndexedPoint {
  AgentId id;
  Vec2 position;
};

struct Neighbor {
  AgentId id;
  Vec2 position;
  double distance;
};

/// Uniform grid of square cells with side `cell_size`. Built once per step, then read-only;
/// concurrent queries are safe.
class SpatialIndex {
 public:
  /// Throws ConfigError if radius <= 0.
  SpatialIndex(std::span<const IndexedPoint> points, double radius);

  double cell_size() const { return cell_size_; }
  std::size_t bucket_count() const { return buckets_.size(); }
  std::size_t size() const { return size_; }
  /// Sizes of all non-empty buckets, unordered.
  std::vector<std::size_t> bucket_sizes() const;

  /// All inserted points with |q - p| <= r (closed ball). Throws ContractViolation if r > cell_size.
  std::vector<Neighbor> neighbors_within(Vec2 p, double r) const;
  /// Same as neighbors_within but appends into `out` (cleared first) to avoid reallocation.
  void neighbors_within(Vec2 p, double r, std::vector<Neighbor>& out) const;

 private:
  struct CellKey {
    std::int64_t ix;
    std::int64_t iy;
    friend bool operator==(CellKey, CellKey) = default;
  };
  struct CellHash {
    std::size_t operator()(CellKey k) const noexcept;
  };

  CellKey cell_of(Vec2 p) const;

  double cell_size_;
  std::size_t size_ = 0;
  std::unordered_map<CellKey, std::vector<IndexedPoint>, CellHash> buckets_;
};

SpatialIndex build_index(std::span<const IndexedPoint> points, double radius);

}  // namespace swarm
