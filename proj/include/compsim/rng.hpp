#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace compsim {

namespace detail {

// splitmix64 step; fully specified, no library dependence.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Deterministic generator. Every random quantity in the simulator draws from
// a named substream (see substream_seed), so a baseline run and a dynamic run
// with the same root seed share geometry, shadowing and fading draws exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // decorrelate trivially close seeds
    detail::splitmix64(state_);
  }

  std::uint64_t next_u64() { return detail::splitmix64(state_); }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; u1 shifted into (0, 1] so log() stays finite.
  double normal(double mean, double stddev) {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * M_PI * u2);
  }

  // unbiased index in [0, n) via 128-bit multiply (Lemire)
  std::size_t uniform_index(std::size_t n) {
    if (n <= 1) return 0;
    while (true) {
      const std::uint64_t x = next_u64();
      const unsigned __int128 m =
          static_cast<unsigned __int128>(x) * static_cast<unsigned __int128>(n);
      const std::uint64_t lo = static_cast<std::uint64_t>(m);
      if (lo >= static_cast<std::uint64_t>(-static_cast<std::int64_t>(n)) % n ||
          lo >= n) {
        return static_cast<std::size_t>(m >> 64);
      }
    }
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_index(i)]);
    }
  }

 private:
  std::uint64_t state_;
};

// Hash a (root seed, purpose tag, ids) tuple into a substream seed.
inline std::uint64_t substream_seed(std::uint64_t root, std::string_view tag,
                                    std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t h = root ^ 0x6a09e667f3bcc909ULL;
  const auto absorb = [&h](std::uint64_t v) {
    std::uint64_t s = h ^ v;
    h = detail::splitmix64(s);
  };
  for (const char c : tag) {
    absorb(static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
  }
  absorb(a);
  absorb(b);
  return h;
}

}  // namespace compsim
