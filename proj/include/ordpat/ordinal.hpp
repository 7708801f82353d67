#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>

namespace ordpat {

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 10;

/// How exact ties inside a window are handled. `stable` ranks the earlier
/// sample lower; `reject` treats any tie as an error.
enum class TiePolicy { stable, reject };

const char* to_string(TiePolicy policy);
TiePolicy parse_tie_policy(const std::string& text);

/// n! for 0 <= n <= 20.
std::uint64_t factorial(int n);

/// Throws InvalidInputError unless kMinDimension <= d <= kMaxDimension.
void check_dimension(int d);

/// True when a series of length n is below the practical sampling bound
/// for dimension d, i.e. n <= (d+1)!.
bool undersampled(std::size_t n, int d);

/// Permutation of the time-indices 1..d of a window, listed from the lowest
/// sample value to the highest. [2.0, 1.0, 3.0] gives (2, 1, 3).
class OrdinalPattern {
 public:
  /// Validates that `order` is a permutation of 1..order.size().
  explicit OrdinalPattern(std::span<const int> order);
  OrdinalPattern(std::initializer_list<int> order);

  int dimension() const noexcept { return d_; }
  std::span<const int> order() const noexcept { return {order_.data(), static_cast<std::size_t>(d_)}; }
  int operator[](int i) const { return order_[static_cast<std::size_t>(i)]; }

  std::string to_string() const;

  friend bool operator==(const OrdinalPattern& a, const OrdinalPattern& b) {
    return a.d_ == b.d_ && std::equal(a.order().begin(), a.order().end(), b.order().begin());
  }

 private:
  int d_ = 0;
  std::array<int, kMaxDimension> order_{};
};

/// Lexicographic (Lehmer) rank of an ordinal pattern, in [0, d!).
struct PatternIndex {
  int d = 0;
  std::uint32_t code = 0;

  friend bool operator==(const PatternIndex&, const PatternIndex&) = default;
};

OrdinalPattern ordinal_pattern(std::span<const double> window, TiePolicy policy = TiePolicy::stable);

PatternIndex encode(const OrdinalPattern& pattern);

/// Throws RangeError when code >= d!.
OrdinalPattern decode(PatternIndex index);

}  // namespace ordpat
