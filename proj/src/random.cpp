#include "swarm/random.hpp"

#include <cmath>
#include <numbers>

namespace swarm {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, StreamDomain domain, std::uint64_t key,
                     std::uint64_t counter)
    : key_(mix64(mix64(mix64(seed) ^ static_cast<std::uint64_t>(domain)) ^ key) ^
           mix64(counter + 0x632be59bd9b4e019ULL)) {}

std::uint64_t RngStream::next_u64() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++draws_); }

double RngStream::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

Vec2 RngStream::next_in_disk(double radius) {
  const double r = radius * std::sqrt(next_unit());
  const double theta = 2.0 * std::numbers::pi * next_unit();
  return {r * std::cos(theta), r * std::sin(theta)};
}

Vec2 RngStream::next_in_region(const Region& r) {
  const double x = next_uniform(r.min.x, r.max.x);
  const double y = next_uniform(r.min.y, r.max.y);
  return {x, y};
}

}  // namespace swarm
