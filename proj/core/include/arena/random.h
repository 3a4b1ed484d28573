#ifndef ARENA_RANDOM_H_
#define ARENA_RANDOM_H_

#include <cstdint>
#include <initializer_list>

namespace arena {

// splitmix64 finalizer. Bijective on 64-bit values.
constexpr uint64_t Mix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Folds several values into one seed. Used to derive independent substreams
// (per match, per request, per bootstrap resample) from a root seed.
constexpr uint64_t DeriveSeed(std::initializer_list<uint64_t> parts) {
  uint64_t h = 0x243F6A8885A308D3ULL;
  for (uint64_t p : parts) h = Mix64(h ^ Mix64(p));
  return h;
}

// Small deterministic generator. The standard distributions are not
// reproducible across library implementations, so sampling goes through
// Uniform() below instead.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Unbiased integer in [0, bound). bound must be positive.
  uint64_t Uniform(uint64_t bound) {
    const uint64_t limit = -bound % bound;  // 2^64 mod bound
    uint64_t x;
    do {
      x = Next();
    } while (x < limit);
    return x % bound;
  }

  // Integer in [lo, hi].
  int64_t UniformRange(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(Uniform(static_cast<uint64_t>(hi - lo) + 1));
  }

 private:
  uint64_t state_;
};

}  // namespace arena

#endif  // ARENA_RANDOM_H_
