#pragma once

#include <array>
#include <cstdint>

namespace gwm {

/// Philox4x32-10 counter-based generator.
///
/// Streams are split by construction: the 64-bit key is the master seed and
/// the high counter word is the stream index, so distinct replicate streams
/// never overlap and reproducibility is a function of
/// (generator name, master seed) alone.  Period per stream exceeds 2^130.
class Philox {
 public:
  Philox(std::uint64_t key, std::uint64_t stream)
      : key0_(std::uint32_t(key)),
        key1_(std::uint32_t(key >> 32)),
        stream_(stream) {}

  std::uint32_t next_u32() {
    if (idx_ == 4) {
      block();
      idx_ = 0;
    }
    return out_[std::size_t(idx_++)];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return double(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    return std::uint64_t(next_double() * double(n)) % n;
  }

 private:
  static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) {
    const std::uint64_t p = std::uint64_t(a) * b;
    hi = std::uint32_t(p >> 32);
    lo = std::uint32_t(p);
  }

  void block() {
    std::uint32_t c0 = std::uint32_t(counter_);
    std::uint32_t c1 = std::uint32_t(counter_ >> 32);
    std::uint32_t c2 = std::uint32_t(stream_);
    std::uint32_t c3 = std::uint32_t(stream_ >> 32);
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      std::uint32_t hi0, lo0, hi1, lo1;
      mulhilo(0xD2511F53u, c0, hi0, lo0);
      mulhilo(0xCD9E8D57u, c2, hi1, lo1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    out_ = {c0, c1, c2, c3};
    ++counter_;
  }

  std::uint32_t key0_, key1_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> out_{};
  int idx_ = 4;
};

}  // namespace gwm
