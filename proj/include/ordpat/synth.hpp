#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include "ordpat/time_series.hpp"

namespace ordpat {

/// Engine behind every generator. std::mt19937_64 is fully specified by the
/// standard, so output is identical across platforms; all conversions to
/// doubles and bounded integers are done here rather than through the
/// implementation-defined std distributions.
using Engine = std::mt19937_64;
inline constexpr const char* kEngineName = "mt19937_64";
inline constexpr const char* kSeedSplitName = "splitmix64";
inline constexpr std::size_t kDefaultTransient = 1000;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of ensemble member `index` under `master`: the (index+1)-th output
/// of a SplitMix64 stream started at `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Uniform double in (0, 1) from the top 53 bits; zero is redrawn.
double unit_open(Engine& engine);

/// Unbiased integer in [0, bound), bound >= 1.
std::uint64_t bounded(Engine& engine, std::uint64_t bound);

enum class GeneratorKind { logistic, uniform, shuffle };

const char* to_string(GeneratorKind kind);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::uniform;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  /// Logistic only. When unset, drawn from the seed in (0.1, 0.9).
  std::optional<double> x0;
  std::size_t transient = kDefaultTransient;
  /// Shuffle only.
  std::shared_ptr<const TimeSeries> source;
};

/// x0 used by the logistic generator for this spec.
double resolve_x0(const GeneratorSpec& spec);

/// Orbit of x -> 4x(1-x) after `transient` discarded iterations.
/// Rejects x0 outside (0, 1) and starting points that land on a fixed point
/// (0.25, 0.5, 0.75) with DegenerateSeedError; an orbit that collapses onto
/// a fixed point in floating point is rejected the same way.
TimeSeries logistic_series(const GeneratorSpec& spec);

/// n iid samples, uniform on (0, 1).
TimeSeries uniform_series(const GeneratorSpec& spec);

/// Fisher-Yates permutation of the source values. Timestamps keep their
/// positions.
TimeSeries shuffle_surrogate(const GeneratorSpec& spec);

TimeSeries generate(const GeneratorSpec& spec);

}  // namespace ordpat
