#pragma once

// Straightforward serial implementations. They go through ordinal_pattern()
// and encode() one window at a time and rebuild from scratch where the
// kernels work incrementally; kept for testing and benchmarking.

#include <span>

#include "ordpat/census.hpp"

namespace ordpat::reference {

PatternCensus build_census(std::span<const double> series, int d, TiePolicy policy = TiePolicy::stable);

ForbiddenCurve forbidden_curve(std::span<const double> series, int d, std::span<const std::size_t> prefix_lengths,
                               TiePolicy policy = TiePolicy::stable);

RollingTrace rolling_forbidden(std::span<const double> series, int d, std::size_t window_len, std::size_t step,
                               TiePolicy policy = TiePolicy::stable);

}  // namespace ordpat::reference
