#pragma once

#include <cmath>
#include <cstdint>

namespace hirefire {

/// Stream semantics
/// ----------------
/// Every simulated path owns a private generator derived from
/// (seed, stream_tag, path_index) through the splitmix64 finalizer, so path i
/// produces the same draws no matter how work is sharded across threads and
/// no matter which paths ran before it. stream_tag separates estimators that
/// run under the same user seed (e.g. the two Lemma-style employer
/// estimators) into disjoint stream families.
///
/// The generator is xoshiro256++ (Blackman & Vigna, public domain) seeded
/// with four successive splitmix64 outputs, the authors' recommended
/// initialization.

namespace detail {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t path_index, std::uint64_t stream_tag = 0) {
    std::uint64_t key = seed;
    std::uint64_t a = detail::splitmix64_next(key);
    key ^= 0x6A09E667F3BCC909ULL * (stream_tag + 1) + path_index;
    key += a;
    for (auto& word : state_) word = detail::splitmix64_next(key);
    have_spare_ = false;
    spare_ = 0.0;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl64(state_[3], 45);
    return result;
  }

  /// Uniform double in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in (-1,1).
  double uniform_symmetric() {
    return static_cast<double>(static_cast<std::int64_t>(next_u64() >> 10)) * 0x1.0p-53 - 1.0;
  }

  /// Standard normal via the Marsaglia polar method (pairs cached).
  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = uniform_symmetric();
      v = uniform_symmetric();
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    have_spare_ = true;
    return u * factor;
  }

 private:
  std::uint64_t state_[4];
  double spare_;
  bool have_spare_;
};

/// Stream tags for estimators that must not share draws under one seed.
enum class StreamTag : std::uint64_t {
  Main = 0,
  EmployerTypeDraw = 1,
  EmployerFilter = 2,
  StrongType = 3,
};

}  // namespace hirefire
