#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace mlstat {

// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
// Stateless: a block is a pure function of (counter, key), so any sample can be
// regenerated without replaying a stream.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) {
    for (int r = 0; r < 10; ++r) {
      if (r > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }
};

// Uniform variates addressed by (sample index, stream, dimension).
// Sample i always sees the same numbers no matter how work is split between threads.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint32_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, stream_(stream) {}

  // Fills out[d] for dimensions d = 0..size-1; values lie in the open interval (0, 1).
  void uniforms(std::uint64_t index, std::span<double> out) const {
    for (std::size_t d = 0; d < out.size(); d += 2) {
      auto b = Philox4x32::block({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                                  static_cast<std::uint32_t>(d / 2), stream_},
                                 key_);
      out[d] = to_unit(b[0], b[1]);
      if (d + 1 < out.size()) out[d + 1] = to_unit(b[2], b[3]);
    }
  }

  double uniform(std::uint64_t index, std::uint32_t dim) const {
    auto b = Philox4x32::block({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                                dim / 2, stream_},
                               key_);
    return dim % 2 == 0 ? to_unit(b[0], b[1]) : to_unit(b[2], b[3]);
  }

 private:
  static double to_unit(std::uint32_t a, std::uint32_t b) {
    const std::uint64_t k = ((std::uint64_t{a} << 32) | b) >> 11;  // 53 bits
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
  }

  Philox4x32::Key key_;
  std::uint32_t stream_;
};

}  // namespace mlstat
