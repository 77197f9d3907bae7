#pragma once

#include <cstdint>
#include <random>

namespace tmlab {

// Seeded random source shared by every stochastic component. All decisions are
// derived from next_unit() so the draw sequence is fully determined by the
// seed and by how many decisions were made before — the contract the
// reproducibility tests rely on. The mapping from engine output to [0,1) is
// fixed here instead of going through std::uniform_real_distribution, whose
// output is implementation-defined.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool next_bool(double probability) { return next_unit() < probability; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tmlab
