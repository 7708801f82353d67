#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ordpat {

using Date = std::chrono::sys_days;

/// Strict `YYYY-MM-DD`; nullopt on anything else, including impossible dates.
std::optional<Date> parse_iso_date(std::string_view text);
std::string format_iso_date(Date date);

/// Provenance carried alongside a series.
struct SeriesMeta {
  std::string source;
  std::string column;
  std::size_t rows_accepted = 0;
  std::size_t rows_skipped = 0;
  /// Generator algorithm for synthetic series, empty for ingested data.
  std::string generator;
  std::optional<std::uint64_t> seed;
  /// Transforms applied after loading, in order (e.g. "first_difference").
  std::vector<std::string> transforms;

  friend bool operator==(const SeriesMeta&, const SeriesMeta&) = default;
};

/// Ordered, finite, non-empty scalar series with optional strictly
/// increasing dates.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values, SeriesMeta meta = {});
  TimeSeries(std::vector<double> values, std::vector<Date> timestamps, SeriesMeta meta = {});

  std::span<const double> values() const noexcept { return values_; }
  std::span<const Date> timestamps() const noexcept { return timestamps_; }
  bool has_timestamps() const noexcept { return !timestamps_.empty(); }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  const SeriesMeta& meta() const noexcept { return meta_; }
  SeriesMeta& meta() noexcept { return meta_; }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::vector<double> values_;
  std::vector<Date> timestamps_;
  SeriesMeta meta_;
};

/// Contiguous sub-series [start, start + length); timestamps follow along.
/// Throws RangeError when the range is empty or exceeds the series.
TimeSeries slice(const TimeSeries& series, std::size_t start, std::size_t length);

/// x[i+1] - x[i]. Not part of the plain forbidden-pattern procedure, which
/// works on raw values; recorded in meta.transforms.
TimeSeries first_difference(const TimeSeries& series);

}  // namespace ordpat
