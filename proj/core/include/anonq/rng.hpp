#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <memory>
#include <random>
#include <stdexcept>

namespace anonq {

/// Deterministic random stream. All protocol randomness flows through one of
/// these; (seed, stream) fully pins every draw, so runs replay bit-for-bit.
///
/// Draw primitives are hand-rolled on top of mt19937_64 instead of the std
/// distributions, which are not pinned by the standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t x = seed;
    x ^= 0x9E3779B97F4A7C15ULL * (stream + 1);
    std::seed_seq seq{static_cast<std::uint32_t>(splitmix(x)),
                      static_cast<std::uint32_t>(splitmix(x) >> 32),
                      static_cast<std::uint32_t>(splitmix(x)),
                      static_cast<std::uint32_t>(splitmix(x) >> 32)};
    eng_.seed(seq);
  }

  /// Test seam: a stream that replays a fixed list of u01 values.
  static Rng scripted(std::deque<double> values) {
    Rng r(0);
    r.script_ = std::make_shared<std::deque<double>>(std::move(values));
    return r;
  }

  std::uint64_t next64() { return eng_(); }

  /// Uniform double in [0, 1), 53-bit resolution.
  double u01() {
    if (script_) [[unlikely]] {
      if (script_->empty()) throw std::logic_error("scripted rng exhausted");
      double v = script_->front();
      script_->pop_front();
      return v;
    }
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  int bit() {
    if (script_) [[unlikely]]
      return u01() < 0.5 ? 0 : 1;
    return static_cast<int>(eng_() >> 63);
  }

  /// Uniform integer in [0, m).
  std::uint64_t uniform_int(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("uniform_int: m must be positive");
    if (script_) [[unlikely]]
      return static_cast<std::uint64_t>(u01() * static_cast<double>(m));
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % m;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % m;
  }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * u01() - 1.0;
      v = 2.0 * u01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

 private:
  static std::uint64_t splitmix(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 eng_;
  std::shared_ptr<std::deque<double>> script_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace anonq
