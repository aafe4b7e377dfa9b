#pragma once

#include <cmath>
#include <cstdint>

namespace netres {

// Counter-based pseudo-random stream. Every draw is a pure function of
// (master seed, stream id, time step, draw counter), so rollouts can be
// replayed or run concurrently on distinct stream ids and still produce
// bit-identical paths.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : seed_(master_seed), stream_(stream_id) {}

  /// Position the stream at a time step; resets the per-step draw counter.
  void seek(std::uint64_t t) {
    t_ = t;
    counter_ = 0;
  }

  std::uint64_t next_u64() {
    std::uint64_t x = mix(seed_ ^ golden(1));
    x = mix(x ^ stream_ ^ golden(2));
    x = mix(x ^ t_ ^ golden(3));
    x = mix(x ^ counter_++ ^ golden(4));
    return x;
  }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Standard normal via Box-Muller; draws two uniforms per call.
  double gauss() {
    double u1 = next_double();
    double u2 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  bool bernoulli(double p) { return next_double() < p; }

  /// Inversion-by-search Poisson sampler; fine for desk-scale means.
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    // For large means use the normal approximation with continuity correction.
    if (mean > 512.0) {
      double v = mean + std::sqrt(mean) * gauss();
      return v < 0.0 ? 0 : static_cast<std::uint64_t>(v + 0.5);
    }
    double l = std::exp(-mean);
    double p = 1.0;
    std::uint64_t k = 0;
    do {
      ++k;
      p *= next_double();
    } while (p > l);
    return k - 1;
  }

  /// Index in [0, n) -- n must be positive.
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  std::uint64_t stream_id() const { return stream_; }

 private:
  static std::uint64_t golden(std::uint64_t k) {
    return k * 0x9e3779b97f4a7c15ULL;
  }

  // splitmix64 finalizer.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t t_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace netres
