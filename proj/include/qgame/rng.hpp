#pragma once

#include <cstdint>
#include <string_view>

namespace qgame {

// Counter-based splittable RNG. A stream is a 64-bit key; output word k is
// mix(key + k * gamma), so streams are pure functions of (key, counter) and
// child streams derived from (key, salt) are independent of draw order.
// Every consumer derives its own stream (seed -> repetition -> circuit label
// -> shot), which makes results identical under any execution order.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : key_(mix(seed ^ kGamma)) {}

  std::uint64_t key() const { return key_; }

  SplitRng derive(std::uint64_t salt) const {
    return SplitRng(mix(key_ ^ mix(salt + kGamma)), 0);
  }

  SplitRng derive(std::string_view label) const { return derive(fnv1a(label)); }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). Multiply-shift; bias is < bound / 2^64.
  std::uint64_t uniform_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

 private:
  SplitRng(std::uint64_t raw_key, int) : key_(raw_key) {}

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qgame
