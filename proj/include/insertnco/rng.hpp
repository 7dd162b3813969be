#pragma once

#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

namespace insertnco {

// Counter-based splitmix64 stream. The draw sequence is a pure function of
// the seed, so runs replay identically across platforms and compilers
// (std::random distributions are not portable, hence the hand-rolled draws).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound); rejection sampling keeps the draw unbiased.
  std::uint64_t below(std::uint64_t bound) {
    assert(bound > 0);
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  int pick_index(std::size_t size) {
    return static_cast<int>(below(static_cast<std::uint64_t>(size)));
  }

  // Integer uniform in [lo, hi], both ends inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::uint64_t state_;
};

// Derives an independent stream, e.g. one per episode or per instance, so
// that work split across threads stays reproducible.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t stream) {
  Rng mixer(seed ^ (0x9e3779b97f4a7c15ull * (stream + 1)));
  return Rng(mixer.next_u64());
}

}  // namespace insertnco
