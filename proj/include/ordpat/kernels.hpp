#pragma once

// OpenMP-parallel inner loops behind census.hpp. reference.hpp holds the
// serial implementations these are tested against.

#include <cstdint>
#include <span>
#include <vector>

#include "ordpat/ordinal.hpp"

namespace ordpat::kernels {

struct WindowCodes {
  int d = 0;
  std::vector<std::uint32_t> codes;
  std::uint64_t ties_seen = 0;
};

/// Lehmer code of every delay-1 window, in window order. Under
/// TiePolicy::reject the first tied window raises TieError.
WindowCodes encode_windows(std::span<const double> series, int d, TiePolicy policy);

/// Histogram of codes into d! bins.
std::vector<std::uint64_t> histogram(std::span<const std::uint32_t> codes, int d);

/// Forbidden count of each slice of `codes_per_slice` consecutive codes
/// starting at 0, step, 2*step, ...; `positions` slices in total.
std::vector<std::uint64_t> sliding_forbidden(std::span<const std::uint32_t> codes, int d, std::size_t codes_per_slice,
                                             std::size_t step, std::size_t positions);

/// Throws InvalidInputError naming the first non-finite sample.
void require_finite(std::span<const double> series);

}  // namespace ordpat::kernels
