#pragma once

#include <cstdint>
#include <random>

namespace latgauss {

// Reproducible random stream. Identical (seed, stream_id) pairs give identical
// sequences on every platform: the engine and the seeding procedure are fully
// specified by the standard, and uniform doubles are built from raw bits
// rather than std::uniform_real_distribution.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  RngStream substream(std::uint64_t id) const { return RngStream(seed_, id); }

 private:
  static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32), 0x6c67u};
    return std::mt19937_64(seq);
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace latgauss
