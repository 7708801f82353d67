#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordpat/census.hpp"
#include "ordpat/time_series.hpp"

namespace ordpat {

inline constexpr double kDefaultThreshold = 10.0;
inline constexpr std::size_t kDefaultMembers = 20;
inline constexpr std::size_t kDefaultCurvePoints = 24;

enum class SurrogateKind { uniform, shuffle };

const char* to_string(SurrogateKind kind);
SurrogateKind parse_surrogate_kind(const std::string& text);

/// Forbidden counts of M surrogate series of length n.
struct BaselineEnsemble {
  int d = 0;
  std::size_t n = 0;
  SurrogateKind kind = SurrogateKind::uniform;
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> member_seeds;
  std::vector<std::uint64_t> members;
  double mean = 0.0;
  /// Population standard deviation (divides by M).
  double std = 0.0;
  std::uint64_t max = 0;

  friend bool operator==(const BaselineEnsemble&, const BaselineEnsemble&) = default;
};

/// Member i uses seed derive_seed(master_seed, i). Uniform surrogates have
/// length n; shuffle surrogates permute `source`, whose length must equal n.
/// Members are evaluated in parallel and merged by index.
BaselineEnsemble baseline(int d, std::size_t n, SurrogateKind kind, std::size_t members, std::uint64_t master_seed,
                          std::span<const double> source = {});

enum class Classification { deterministic, inconclusive };

const char* to_string(Classification c);

struct DeterminismVerdict {
  std::uint64_t observed = 0;
  BaselineEnsemble baseline;
  double threshold = kDefaultThreshold;
  /// observed / max(baseline.mean, 1)
  double ratio = 0.0;
  Classification classification = Classification::inconclusive;
  /// baseline.n <= (d+1)!
  bool undersampled = false;
};

DeterminismVerdict classify(std::uint64_t observed, const BaselineEnsemble& baseline,
                            double threshold = kDefaultThreshold);

/// Prefix grid for n(d, N). With no explicit prefixes: `points` log-spaced
/// lengths from max(10d, (d+1)!+1) to n, rounded and deduplicated; just {n}
/// when that start is not below n.
struct PrefixRule {
  std::size_t points = kDefaultCurvePoints;
  std::vector<std::size_t> explicit_prefixes;
};

std::vector<std::size_t> prefix_grid(int d, std::size_t n, const PrefixRule& rule);

struct RollingParams {
  int d = 5;
  std::size_t window = 200;
  std::size_t step = 1;
};

struct BaselineParams {
  SurrogateKind kind = SurrogateKind::uniform;
  std::size_t members = kDefaultMembers;
  std::uint64_t master_seed = 0;
  double threshold = kDefaultThreshold;
};

struct ReportOptions {
  std::vector<int> dims{4, 5, 6};
  PrefixRule prefixes;
  std::optional<RollingParams> rolling;
  BaselineParams baseline;
  TiePolicy tie_policy = TiePolicy::stable;
};

struct Warning {
  std::string code;
  std::optional<int> d;
  std::string message;
  friend bool operator==(const Warning&, const Warning&) = default;
};

struct AnalysisError {
  std::string kind;
  std::string message;
};

struct DimensionResult {
  int d = 0;
  std::optional<AnalysisError> error;
  std::optional<PatternCensus> census;
  std::optional<ForbiddenCurve> curve;
  std::optional<OccurrencePdf> pdf;
  std::optional<DeterminismVerdict> verdict;
  /// (n_first - n_last) / max(n_first, 1) over the curve.
  double curve_decay = 0.0;
  bool undersampled = false;

  bool ok() const noexcept { return !error.has_value(); }
  std::uint64_t forbidden() const;
};

struct SeriesReport {
  SeriesMeta input;
  std::size_t n = 0;
  ReportOptions options;
  std::vector<DimensionResult> dimensions;
  std::optional<RollingTrace> rolling;
  std::optional<AnalysisError> rolling_error;
  std::vector<Warning> warnings;

  bool complete() const;
  const DimensionResult* find(int d) const;
};

/// Runs census, curve, occurrence PDF and verdict for every requested d,
/// plus the rolling trace when requested. Failures are recorded per d, never
/// thrown; undersampling and ties become warnings.
SeriesReport full_report(const TimeSeries& series, const ReportOptions& options);

}  // namespace ordpat
