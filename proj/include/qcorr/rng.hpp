#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>

namespace qcorr::rng {

// SplitMix64 finalizer, used to derive substream seeds. Every consumer of
// randomness draws from its own substream, so adding a new sampler never
// perturbs the streams of existing ones.
constexpr std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
  return mix(mix(seed) ^ mix(stream));
}

inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t stream_id) {
  return std::mt19937_64(derive(seed, stream_id));
}

// Uniform strictly inside (0,1), 53-bit resolution; never returns 0 or 1.
inline double uniform01(std::mt19937_64& g) {
  return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
}

inline double unit_exponential(std::mt19937_64& g) {
  return -std::log(uniform01(g));
}

// Quantile transform of F(x) = exp(-1/x).
inline double unit_frechet(std::mt19937_64& g) {
  return -1.0 / std::log(uniform01(g));
}

// Box-Muller; consumes exactly two uniforms.
inline std::pair<double, double> normal_pair(std::mt19937_64& g) {
  const double r = std::sqrt(2.0 * unit_exponential(g));
  const double a = 2.0 * std::numbers::pi * uniform01(g);
  return {r * std::cos(a), r * std::sin(a)};
}

// Kanter's sampler for the positive alpha-stable law with Laplace transform
// exp(-s^alpha), 0 < alpha < 1.
inline double positive_stable(double alpha, std::mt19937_64& g) {
  const double v = std::numbers::pi * uniform01(g);
  const double w = unit_exponential(g);
  return std::sin(alpha * v) / std::pow(std::sin(v), 1.0 / alpha) *
         std::pow(std::sin((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
}

}  // namespace qcorr::rng
