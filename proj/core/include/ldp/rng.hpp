#pragma once

#include <cstdint>
#include <random>

namespace ldp {

using Rng = std::mt19937_64;

// Stream k of master seed s.  Streams are used as the unit of parallel work:
// batch b always draws from stream b regardless of how many threads run, so
// results are reproducible across thread counts.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed & 0xffffffffu),
      static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream & 0xffffffffu),
      static_cast<std::uint32_t>(stream >> 32),
  };
  return Rng(seq);
}

}  // namespace ldp
