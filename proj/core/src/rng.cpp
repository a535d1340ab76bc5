#include "cupsim/rng.hpp"

#include <stdexcept>

namespace cupsim {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t path) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : RngStream(seed, 0) {}

RngStream::RngStream(std::uint64_t seed, std::uint64_t path)
    : seed_(seed), path_(path), engine_(make_engine(seed, path)) {}

RngStream RngStream::substream(std::uint64_t index) const {
  // Path 0 is reserved for the root, so child paths are mixed and forced odd.
  const std::uint64_t child = splitmix64(path_ ^ splitmix64(index + 1)) | 1ULL;
  return RngStream(seed_, child);
}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("RngStream::below: bound must be positive");
  }
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
  std::uint64_t x = next_u64();
  while (x >= limit) {
    x = next_u64();
  }
  return x % bound;
}

bool RngStream::coin() { return (next_u64() >> 63) != 0; }

}  // namespace cupsim
