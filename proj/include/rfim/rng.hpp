#pragma once
#include <cmath>
#include <cstdint>
#include <random>

namespace rfim {

/** splitmix64 step; used to derive stream seeds from a master seed.
 *  https://prng.di.unimi.it/splitmix64.c */
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/** Deterministic seed for (stream_tag, index) under a master seed. */
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_tag,
                                 std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s = a ^ (stream_tag * 0x9e3779b97f4a7c15ULL);
  std::uint64_t b = splitmix64(s);
  s = b ^ (index * 0xd1b54a32d192ed03ULL);
  return splitmix64(s);
}

/** mt19937_64 with fixed output mappings.
 *
 *  The engine's bit stream is pinned by the C++ standard; the distribution
 *  helpers are hand-rolled because std::uniform_real_distribution and
 *  std::normal_distribution are implementation-defined.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /** Uniform on [0,1): top 53 bits scaled by 2^-53. */
  double uniform01() { return double(eng_() >> 11) * 0x1.0p-53; }

  /** Uniform integer in [0, n) by rejection (unbiased). */
  std::uint64_t uniform_int(std::uint64_t n) {
    // largest multiple of n that fits in 2^64, minus 1
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n + 1) % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x > limit);
    return x % n;
  }

  /** Standard normal via Box-Muller with a cached spare. */
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform01();  // in (0,1], log is finite
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /** Fair +1/-1 spin. */
  int pm1() { return (eng_() & 1ULL) ? +1 : -1; }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rfim
