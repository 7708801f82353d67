#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ordpat/ordinal.hpp"
#include "ordpat/time_series.hpp"

namespace ordpat {

/// Occurrence count of every one of the d! patterns over a sample range,
/// dense and indexed by Lehmer code.
struct PatternCensus {
  int d = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t windows_total = 0;
  /// Windows holding at least one exact duplicate value.
  std::uint64_t ties_seen = 0;

  std::size_t pattern_count() const noexcept { return counts.size(); }
  std::uint64_t count(const OrdinalPattern& p) const;

  friend bool operator==(const PatternCensus&, const PatternCensus&) = default;
};

struct CurvePoint {
  std::size_t n = 0;
  std::uint64_t forbidden = 0;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// n(d, N): forbidden-pattern count against prefix length.
struct ForbiddenCurve {
  int d = 0;
  std::vector<CurvePoint> points;
  friend bool operator==(const ForbiddenCurve&, const ForbiddenCurve&) = default;
};

/// Multiplicity distribution over visited patterns. Unvisited patterns are
/// excluded from `probability` and reported in `zero_count`.
struct OccurrencePdf {
  int d = 0;
  std::vector<std::uint64_t> support;
  std::vector<double> probability;
  std::uint64_t zero_count = 0;
  std::uint64_t windows_total = 0;

  /// windows_total / d!, mean occurrences per pattern for an iid series.
  double poisson_mean() const;
};

struct TracePoint {
  /// 0-based index of the last sample in the window.
  std::size_t end_index = 0;
  std::uint64_t forbidden = 0;
  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RollingTrace {
  int d = 0;
  std::size_t window_len = 0;
  std::size_t step = 0;
  std::vector<TracePoint> points;
  friend bool operator==(const RollingTrace&, const RollingTrace&) = default;
};

PatternCensus build_census(std::span<const double> series, int d, TiePolicy policy = TiePolicy::stable);
PatternCensus build_census(const TimeSeries& series, int d, TiePolicy policy = TiePolicy::stable);

/// Number of zero-count patterns.
std::uint64_t forbidden_count(const PatternCensus& census);

/// Codes of all zero-count patterns, ascending.
std::vector<std::uint32_t> forbidden_codes(const PatternCensus& census);

/// One pass over the series; prefix lengths must be strictly increasing,
/// each in [d, series.size()].
ForbiddenCurve forbidden_curve(std::span<const double> series, int d, std::span<const std::size_t> prefix_lengths,
                               TiePolicy policy = TiePolicy::stable);

OccurrencePdf occurrence_pdf(const PatternCensus& census);

/// Forbidden count of every window_len-sample slice starting at 0, step,
/// 2*step, ... while the slice fits.
RollingTrace rolling_forbidden(std::span<const double> series, int d, std::size_t window_len, std::size_t step,
                               TiePolicy policy = TiePolicy::stable);

}  // namespace ordpat
