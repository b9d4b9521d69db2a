#pragma once

#include <cstdint>

namespace slab {

// Splittable deterministic generator: a SplitMix64-style walk whose increment
// is derived from the stream index. A given (seed, stream) pair always yields
// the same sequence, and distinct streams can be consumed concurrently and in
// any order without affecting each other.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(seed ^ 0x9e3779b97f4a7c15ull) ^ mix(~stream)),
        gamma_(mix(stream ^ 0xbf58476d1ce4e5b9ull) | 1ull),
        seed_(seed),
        stream_(stream) {}

  std::uint64_t next_u64() {
    state_ += gamma_;
    return mix(state_);
  }

  // Uniform on the open interval (0,1); never returns 0 or 1.
  double next_unit_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Stafford mix13 finalizer; also usable for deriving sub-seeds.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
  std::uint64_t gamma_;
  std::uint64_t seed_;
  std::uint64_t stream_;
};

// Deterministic seed derivation for independent sub-experiments (e.g. one
// seed per sweep row).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return RngStream::mix(seed + 0x9e3779b97f4a7c15ull * (index + 1));
}

}  // namespace slab
