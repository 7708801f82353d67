#include "ordpat/reference.hpp"

#include <string>

#include "ordpat/error.hpp"

namespace ordpat::reference {

PatternCensus build_census(std::span<const double> series, int d, TiePolicy policy) {
  check_dimension(d);
  if (series.size() < static_cast<std::size_t>(d)) {
    throw InsufficientDataError("series of length " + std::to_string(series.size()) + " is shorter than d=" +
                                std::to_string(d));
  }
  PatternCensus census;
  census.d = d;
  census.counts.assign(factorial(d), 0);
  for (std::size_t i = 0; i + static_cast<std::size_t>(d) <= series.size(); ++i) {
    const auto window = series.subspan(i, static_cast<std::size_t>(d));
    const auto pattern = ordinal_pattern(window, policy);
    ++census.counts[encode(pattern).code];
    ++census.windows_total;
    for (std::size_t a = 0; a < window.size(); ++a) {
      bool dup = false;
      for (std::size_t b = a + 1; b < window.size(); ++b) dup = dup || window[a] == window[b];
      if (dup) {
        ++census.ties_seen;
        break;
      }
    }
  }
  return census;
}

ForbiddenCurve forbidden_curve(std::span<const double> series, int d, std::span<const std::size_t> prefix_lengths,
                               TiePolicy policy) {
  ForbiddenCurve curve;
  curve.d = d;
  for (std::size_t i = 0; i < prefix_lengths.size(); ++i) {
    if (i > 0 && prefix_lengths[i] <= prefix_lengths[i - 1]) {
      throw InvalidInputError("prefix lengths must be strictly increasing");
    }
    if (prefix_lengths[i] > series.size()) throw InsufficientDataError("prefix exceeds series length");
    const auto census = reference::build_census(series.first(prefix_lengths[i]), d, policy);
    curve.points.push_back({prefix_lengths[i], forbidden_count(census)});
  }
  return curve;
}

RollingTrace rolling_forbidden(std::span<const double> series, int d, std::size_t window_len, std::size_t step,
                               TiePolicy policy) {
  if (step == 0) throw InvalidInputError("rolling step must be at least 1");
  if (window_len < static_cast<std::size_t>(d)) throw InvalidInputError("rolling window shorter than d");
  if (window_len > series.size()) throw InsufficientDataError("rolling window exceeds series length");
  RollingTrace trace;
  trace.d = d;
  trace.window_len = window_len;
  trace.step = step;
  for (std::size_t start = 0; start + window_len <= series.size(); start += step) {
    const auto census = reference::build_census(series.subspan(start, window_len), d, policy);
    trace.points.push_back({start + window_len - 1, forbidden_count(census)});
  }
  return trace;
}

}  // namespace ordpat::reference
