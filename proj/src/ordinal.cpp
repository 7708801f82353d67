#include "ordpat/ordinal.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "ordpat/error.hpp"

namespace ordpat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::tie: return "tie";
    case ErrorKind::range: return "range";
    case ErrorKind::insufficient_data: return "insufficient_data";
    case ErrorKind::degenerate_seed: return "degenerate_seed";
    case ErrorKind::io: return "io";
    case ErrorKind::schema: return "schema";
    case ErrorKind::empty_series: return "empty_series";
    case ErrorKind::ordering: return "ordering";
  }
  return "unknown";
}

const char* to_string(TiePolicy policy) { return policy == TiePolicy::stable ? "stable" : "reject"; }

TiePolicy parse_tie_policy(const std::string& text) {
  if (text == "stable") return TiePolicy::stable;
  if (text == "reject") return TiePolicy::reject;
  throw InvalidInputError("unknown tie policy '" + text + "' (expected stable or reject)");
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw RangeError("factorial argument out of range: " + std::to_string(n));
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

void check_dimension(int d) {
  if (d < kMinDimension || d > kMaxDimension) {
    throw InvalidInputError("dimension d=" + std::to_string(d) + " outside [" + std::to_string(kMinDimension) + ", " +
                            std::to_string(kMaxDimension) + "]");
  }
}

bool undersampled(std::size_t n, int d) { return n <= factorial(d + 1); }

OrdinalPattern::OrdinalPattern(std::span<const int> order) : d_(static_cast<int>(order.size())) {
  check_dimension(d_);
  std::array<bool, kMaxDimension + 1> seen{};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int v = order[i];
    if (v < 1 || v > d_ || seen[static_cast<std::size_t>(v)]) {
      throw InvalidInputError("not a permutation of 1.." + std::to_string(d_));
    }
    seen[static_cast<std::size_t>(v)] = true;
    order_[i] = v;
  }
}

OrdinalPattern::OrdinalPattern(std::initializer_list<int> order)
    : OrdinalPattern(std::span<const int>(order.begin(), order.size())) {}

std::string OrdinalPattern::to_string() const {
  std::string s = "(";
  for (int i = 0; i < d_; ++i) {
    if (i) s += ',';
    s += std::to_string(order_[static_cast<std::size_t>(i)]);
  }
  return s + ")";
}

OrdinalPattern ordinal_pattern(std::span<const double> window, TiePolicy policy) {
  const int d = static_cast<int>(window.size());
  check_dimension(d);
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (!std::isfinite(window[i])) {
      throw InvalidInputError("non-finite value at window position " + std::to_string(i + 1));
    }
  }
  std::vector<int> order(window.size());
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return window[static_cast<std::size_t>(a - 1)] < window[static_cast<std::size_t>(b - 1)]; });
  if (policy == TiePolicy::reject) {
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (window[static_cast<std::size_t>(order[i] - 1)] == window[static_cast<std::size_t>(order[i - 1] - 1)]) {
        throw TieError("tied values at window positions " + std::to_string(order[i - 1]) + " and " +
                       std::to_string(order[i]));
      }
    }
  }
  return OrdinalPattern(order);
}

PatternIndex encode(const OrdinalPattern& pattern) {
  const auto order = pattern.order();
  const int d = pattern.dimension();
  std::uint64_t code = 0;
  for (int j = 0; j < d; ++j) {
    int smaller_after = 0;
    for (int k = j + 1; k < d; ++k) smaller_after += order[static_cast<std::size_t>(k)] < order[static_cast<std::size_t>(j)];
    code += static_cast<std::uint64_t>(smaller_after) * factorial(d - 1 - j);
  }
  return {d, static_cast<std::uint32_t>(code)};
}

OrdinalPattern decode(PatternIndex index) {
  check_dimension(index.d);
  const std::uint64_t total = factorial(index.d);
  if (index.code >= total) {
    throw RangeError("pattern code " + std::to_string(index.code) + " out of range for d=" + std::to_string(index.d) +
                     " (d! = " + std::to_string(total) + ")");
  }
  std::vector<int> pool(static_cast<std::size_t>(index.d));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> order;
  order.reserve(pool.size());
  std::uint64_t rest = index.code;
  for (int j = 0; j < index.d; ++j) {
    const std::uint64_t f = factorial(index.d - 1 - j);
    const auto pick = static_cast<std::ptrdiff_t>(rest / f);
    rest %= f;
    order.push_back(pool[static_cast<std::size_t>(pick)]);
    pool.erase(pool.begin() + pick);
  }
  return OrdinalPattern(order);
}

}  // namespace ordpat
