// Counter-keyed random number generation: every replicate's stream is a pure
// function of (seed, replicate index), so estimates are reproducible under
// any parallel schedule.
#pragma once

#include <cstdint>

namespace maci {

// SplitMix64 step (Steele, Lea & Flood).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class ReplicateStream {
 public:
  // Stream keyed by (seed, index); mirrored streams emit 1 - u for
  // antithetic pairing.
  ReplicateStream(std::uint64_t seed, std::uint64_t index, bool mirrored = false)
      : mirrored_(mirrored) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL);
    state_ = splitmix64(s);
  }

  std::uint64_t next_bits() { return splitmix64(state_); }

  // Uniform on the open interval (0, 1): 53-bit mantissa offset by half an ulp.
  double uniform() {
    double u = (static_cast<double>(next_bits() >> 11) + 0.5) * 0x1.0p-53;
    return mirrored_ ? 1.0 - u : u;
  }

 private:
  std::uint64_t state_ = 0;
  bool mirrored_ = false;
};

}  // namespace maci
