#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace testing_helpers {

/// x -> 4x(1-x), written out independently of the synth module.
inline std::vector<double> logistic_orbit(double x0, std::size_t transient, std::size_t n) {
  double x = x0;
  for (std::size_t i = 0; i < transient; ++i) x = 4.0 * x * (1.0 - x);
  std::vector<double> out(n);
  for (auto& v : out) {
    v = x;
    x = 4.0 * x * (1.0 - x);
  }
  return out;
}

inline std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& v : out) v = u(rng);
  return out;
}

/// Small-integer samples, so exact ties are common.
inline std::vector<double> tied_noise(std::size_t n, std::uint64_t seed, int levels = 5) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(0, levels - 1);
  std::vector<double> out(n);
  for (auto& v : out) v = u(rng);
  return out;
}

}  // namespace testing_helpers
