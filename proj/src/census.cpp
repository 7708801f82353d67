#include "ordpat/census.hpp"

#include <algorithm>
#include <string>

#include "ordpat/error.hpp"
#include "ordpat/kernels.hpp"

namespace ordpat {

std::uint64_t PatternCensus::count(const OrdinalPattern& p) const {
  if (p.dimension() != d) throw InvalidInputError("pattern dimension does not match census");
  return counts.at(encode(p).code);
}

double OccurrencePdf::poisson_mean() const {
  return static_cast<double>(windows_total) / static_cast<double>(factorial(d));
}

PatternCensus build_census(std::span<const double> series, int d, TiePolicy policy) {
  const auto windows = kernels::encode_windows(series, d, policy);
  PatternCensus census;
  census.d = d;
  census.counts = kernels::histogram(windows.codes, d);
  census.windows_total = windows.codes.size();
  census.ties_seen = windows.ties_seen;
  return census;
}

PatternCensus build_census(const TimeSeries& series, int d, TiePolicy policy) {
  return build_census(series.values(), d, policy);
}

std::uint64_t forbidden_count(const PatternCensus& census) {
  std::uint64_t zeros = 0;
  for (const auto c : census.counts) zeros += (c == 0);
  return zeros;
}

std::vector<std::uint32_t> forbidden_codes(const PatternCensus& census) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < census.counts.size(); ++i) {
    if (census.counts[i] == 0) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

namespace {

void check_prefixes(std::span<const std::size_t> prefixes, int d, std::size_t n) {
  if (prefixes.empty()) throw InvalidInputError("no prefix lengths given");
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    if (i > 0 && prefixes[i] <= prefixes[i - 1]) {
      throw InvalidInputError("prefix lengths must be strictly increasing");
    }
    if (prefixes[i] < static_cast<std::size_t>(d)) {
      throw InsufficientDataError("prefix length " + std::to_string(prefixes[i]) + " is shorter than d=" +
                                  std::to_string(d));
    }
  }
  if (prefixes.back() > n) {
    throw InsufficientDataError("prefix length " + std::to_string(prefixes.back()) + " exceeds series length " +
                                std::to_string(n));
  }
}

}  // namespace

ForbiddenCurve forbidden_curve(std::span<const double> series, int d, std::span<const std::size_t> prefix_lengths,
                               TiePolicy policy) {
  check_dimension(d);
  check_prefixes(prefix_lengths, d, series.size());
  const auto windows = kernels::encode_windows(series.first(prefix_lengths.back()), d, policy);

  ForbiddenCurve curve;
  curve.d = d;
  std::vector<std::uint64_t> counts(factorial(d), 0);
  std::uint64_t zeros = counts.size();
  std::size_t next_window = 0;
  for (const auto n : prefix_lengths) {
    const std::size_t windows_in_prefix = n - static_cast<std::size_t>(d) + 1;
    for (; next_window < windows_in_prefix; ++next_window) {
      zeros -= (counts[windows.codes[next_window]]++ == 0);
    }
    curve.points.push_back({n, zeros});
  }
  return curve;
}

OccurrencePdf occurrence_pdf(const PatternCensus& census) {
  if (census.windows_total == 0) throw InsufficientDataError("occurrence PDF of an empty census");
  OccurrencePdf pdf;
  pdf.d = census.d;
  pdf.windows_total = census.windows_total;

  std::vector<std::uint64_t> multiplicities;
  for (const auto c : census.counts) {
    if (c == 0) {
      ++pdf.zero_count;
    } else {
      multiplicities.push_back(c);
    }
  }
  std::sort(multiplicities.begin(), multiplicities.end());
  const auto visited = static_cast<double>(multiplicities.size());
  for (std::size_t i = 0; i < multiplicities.size();) {
    std::size_t j = i;
    while (j < multiplicities.size() && multiplicities[j] == multiplicities[i]) ++j;
    pdf.support.push_back(multiplicities[i]);
    pdf.probability.push_back(static_cast<double>(j - i) / visited);
    i = j;
  }
  return pdf;
}

RollingTrace rolling_forbidden(std::span<const double> series, int d, std::size_t window_len, std::size_t step,
                               TiePolicy policy) {
  check_dimension(d);
  if (step == 0) throw InvalidInputError("rolling step must be at least 1");
  if (window_len < static_cast<std::size_t>(d)) {
    throw InvalidInputError("rolling window " + std::to_string(window_len) + " is shorter than d=" + std::to_string(d));
  }
  if (window_len > series.size()) {
    throw InsufficientDataError("rolling window " + std::to_string(window_len) + " exceeds series length " +
                                std::to_string(series.size()));
  }
  const std::size_t positions = (series.size() - window_len) / step + 1;
  const std::size_t covered = (positions - 1) * step + window_len;
  const auto windows = kernels::encode_windows(series.first(covered), d, policy);
  const std::size_t codes_per_slice = window_len - static_cast<std::size_t>(d) + 1;
  const auto counts = kernels::sliding_forbidden(windows.codes, d, codes_per_slice, step, positions);

  RollingTrace trace;
  trace.d = d;
  trace.window_len = window_len;
  trace.step = step;
  trace.points.reserve(positions);
  for (std::size_t p = 0; p < positions; ++p) {
    trace.points.push_back({p * step + window_len - 1, counts[p]});
  }
  return trace;
}

}  // namespace ordpat
