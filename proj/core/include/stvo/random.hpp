#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace stvo {

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Deterministic child seed for a (base, stream ids...) tuple. Used to give
/// every sweep point / repetition / role its own independent generator, so
/// results do not depend on scheduling or worker count.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> ids) noexcept;

/// Per-worker generator. Not shared across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  double normal(double mean, double stddev);
  double uniform(double lo, double hi);
  bool coin();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Stream ids for derive_seed.
enum class SeedRole : std::uint64_t { Mask = 1, Noise = 2, Shuffle = 3 };

}  // namespace stvo
