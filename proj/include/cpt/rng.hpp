#pragma once
// Seedable counter-style pseudo-random generator with independent substreams.
//
// Replications are distributed by constructing Rng(seed, stream) with a
// distinct stream index per replication; the draw sequence then depends only
// on (seed, stream), never on thread scheduling or call order elsewhere.
// The core is the splitmix64 sequence; the initial state is a double-mixed
// hash of (seed, stream) so distinct streams land in unrelated regions of
// the underlying sequence.

#include <cstdint>
#include <cmath>

namespace cpt {

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    const std::uint64_t a = mix(seed + 0x9E3779B97F4A7C15ull);
    const std::uint64_t b = mix(stream + 0xBF58476D1CE4E5B9ull);
    state_ = mix(a ^ (b + 0x94D049BB133111EBull + (a << 6) + (a >> 2)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  // uniform on [0,1), 53-bit resolution
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0,1), safe as a log() argument
  double uniform_pos() { return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  // standard normal, Marsaglia polar method with one cached spare
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cpt
