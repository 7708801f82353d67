#include "ordpat/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <omp.h>

#include "ordpat/error.hpp"

namespace ordpat::kernels {

namespace {

using Order = std::array<std::uint8_t, kMaxDimension>;

// Stable insertion sort of time-indices by value, then Lehmer rank of the
// resulting order. Sets `tie` when two equal values sit next to each other
// in sorted order, which is the case iff the window has a duplicate.
inline std::uint32_t window_code(const double* w, int d, bool& tie) {
  Order order;
  for (int i = 0; i < d; ++i) {
    int j = i;
    while (j > 0 && w[order[static_cast<std::size_t>(j - 1)]] > w[i]) {
      order[static_cast<std::size_t>(j)] = order[static_cast<std::size_t>(j - 1)];
      --j;
    }
    order[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(i);
  }
  tie = false;
  std::uint32_t code = 0;
  for (int j = 0; j < d; ++j) {
    if (j > 0 && w[order[static_cast<std::size_t>(j)]] == w[order[static_cast<std::size_t>(j - 1)]]) tie = true;
    std::uint32_t smaller_after = 0;
    for (int k = j + 1; k < d; ++k) smaller_after += order[static_cast<std::size_t>(k)] < order[static_cast<std::size_t>(j)];
    code = code * static_cast<std::uint32_t>(d - j) + smaller_after;
  }
  return code;
}

}  // namespace

void require_finite(std::span<const double> series) {
  const auto it = std::find_if(series.begin(), series.end(), [](double v) { return !std::isfinite(v); });
  if (it != series.end()) {
    throw InvalidInputError("non-finite value at sample " + std::to_string(it - series.begin()));
  }
}

WindowCodes encode_windows(std::span<const double> series, int d, TiePolicy policy) {
  check_dimension(d);
  if (series.size() < static_cast<std::size_t>(d)) {
    throw InsufficientDataError("series of length " + std::to_string(series.size()) + " is shorter than d=" +
                                std::to_string(d));
  }
  require_finite(series);

  const auto windows = static_cast<std::int64_t>(series.size() - static_cast<std::size_t>(d) + 1);
  WindowCodes out;
  out.d = d;
  out.codes.resize(static_cast<std::size_t>(windows));
  std::uint64_t ties = 0;
  std::int64_t first_tie = windows;
  const double* data = series.data();
  std::uint32_t* codes = out.codes.data();

#pragma omp parallel for schedule(static) reduction(+ : ties) reduction(min : first_tie)
  for (std::int64_t i = 0; i < windows; ++i) {
    bool tie = false;
    codes[i] = window_code(data + i, d, tie);
    if (tie) {
      ++ties;
      first_tie = std::min(first_tie, i);
    }
  }

  if (policy == TiePolicy::reject && first_tie < windows) {
    throw TieError("tied values in the window starting at sample " + std::to_string(first_tie));
  }
  out.ties_seen = ties;
  return out;
}

std::vector<std::uint64_t> histogram(std::span<const std::uint32_t> codes, int d) {
  std::vector<std::uint64_t> counts(factorial(d), 0);
  for (const auto c : codes) ++counts[c];
  return counts;
}

std::vector<std::uint64_t> sliding_forbidden(std::span<const std::uint32_t> codes, int d, std::size_t codes_per_slice,
                                             std::size_t step, std::size_t positions) {
  std::vector<std::uint64_t> result(positions, 0);
  if (positions == 0) return result;
  const std::size_t patterns = factorial(d);
  const auto total = static_cast<std::int64_t>(positions);

#pragma omp parallel
  {
    // Each thread slides over one contiguous block of positions with its
    // own counters; blocks are fixed by thread id so results do not depend
    // on scheduling.
    const auto threads = static_cast<std::int64_t>(omp_get_num_threads());
    const auto tid = static_cast<std::int64_t>(omp_get_thread_num());
    const std::int64_t block = (total + threads - 1) / threads;
    const std::int64_t begin = std::min(total, tid * block);
    const std::int64_t end = std::min(total, begin + block);

    if (begin < end) {
      std::vector<std::uint32_t> counts(patterns, 0);
      std::size_t zeros = patterns;
      auto add = [&](std::uint32_t c) { zeros -= (counts[c]++ == 0); };
      auto remove = [&](std::uint32_t c) { zeros += (--counts[c] == 0); };

      std::size_t start = static_cast<std::size_t>(begin) * step;
      for (std::size_t k = 0; k < codes_per_slice; ++k) add(codes[start + k]);
      result[static_cast<std::size_t>(begin)] = zeros;

      for (std::int64_t p = begin + 1; p < end; ++p) {
        const std::size_t next = start + step;
        if (step < codes_per_slice) {
          for (std::size_t k = start; k < next; ++k) remove(codes[k]);
          for (std::size_t k = start + codes_per_slice; k < next + codes_per_slice; ++k) add(codes[k]);
        } else {
          for (std::size_t k = start; k < start + codes_per_slice; ++k) remove(codes[k]);
          for (std::size_t k = next; k < next + codes_per_slice; ++k) add(codes[k]);
        }
        start = next;
        result[static_cast<std::size_t>(p)] = zeros;
      }
    }
  }
  return result;
}

}  // namespace ordpat::kernels
