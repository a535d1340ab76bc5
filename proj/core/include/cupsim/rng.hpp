#pragma once

#include <cstdint>
#include <random>

namespace cupsim {

// Deterministic random source for one simulation transcript.
//
// A stream is identified by (seed, substream path). Deriving a substream
// never advances the parent, so run i of a batch sees the same numbers
// whether runs execute serially or on a thread pool. Not safe for concurrent
// use; give each thread its own stream.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed);

  // Independent child stream keyed by index.
  [[nodiscard]] RngStream substream(std::uint64_t index) const;

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform01();
  // Uniform integer on [0, bound), bound > 0, rejection-sampled (no modulo bias).
  std::uint64_t below(std::uint64_t bound);
  bool coin();

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t path() const { return path_; }

private:
  RngStream(std::uint64_t seed, std::uint64_t path);

  std::uint64_t seed_;
  std::uint64_t path_;
  std::mt19937_64 engine_;
};

}  // namespace cupsim
