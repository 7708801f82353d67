#include "ordpat/time_series.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "ordpat/error.hpp"

namespace ordpat {

std::optional<Date> parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto number = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int v = 0;
    const char* first = text.data() + pos;
    const auto [ptr, ec] = std::from_chars(first, first + len, v);
    if (ec != std::errc{} || ptr != first + len) return std::nullopt;
    return v;
  };
  const auto y = number(0, 4);
  const auto m = number(5, 2);
  const auto d = number(8, 2);
  if (!y || !m || !d) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
                                        std::chrono::day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

std::string format_iso_date(Date date) {
  const std::chrono::year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

TimeSeries::TimeSeries(std::vector<double> values, SeriesMeta meta) : TimeSeries(std::move(values), {}, std::move(meta)) {}

TimeSeries::TimeSeries(std::vector<double> values, std::vector<Date> timestamps, SeriesMeta meta)
    : values_(std::move(values)), timestamps_(std::move(timestamps)), meta_(std::move(meta)) {
  if (values_.empty()) throw EmptySeriesError("time series has no samples");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) throw InvalidInputError("non-finite value at sample " + std::to_string(i));
  }
  if (!timestamps_.empty()) {
    if (timestamps_.size() != values_.size()) throw InvalidInputError("timestamps and values differ in length");
    for (std::size_t i = 1; i < timestamps_.size(); ++i) {
      if (timestamps_[i] <= timestamps_[i - 1]) {
        throw OrderingError("timestamps not strictly increasing at sample " + std::to_string(i) + " (" +
                            format_iso_date(timestamps_[i]) + ")");
      }
    }
  }
}

TimeSeries slice(const TimeSeries& series, std::size_t start, std::size_t length) {
  if (length == 0 || start > series.size() || length > series.size() - start) {
    throw RangeError("slice [" + std::to_string(start) + ", +" + std::to_string(length) + ") outside series of length " +
                     std::to_string(series.size()));
  }
  const auto v = series.values().subspan(start, length);
  std::vector<Date> dates;
  if (series.has_timestamps()) {
    const auto t = series.timestamps().subspan(start, length);
    dates.assign(t.begin(), t.end());
  }
  return TimeSeries({v.begin(), v.end()}, std::move(dates), series.meta());
}

TimeSeries first_difference(const TimeSeries& series) {
  if (series.size() < 2) throw InsufficientDataError("first difference needs at least two samples");
  const auto v = series.values();
  std::vector<double> diff(v.size() - 1);
  for (std::size_t i = 1; i < v.size(); ++i) diff[i - 1] = v[i] - v[i - 1];
  std::vector<Date> dates;
  if (series.has_timestamps()) dates.assign(series.timestamps().begin() + 1, series.timestamps().end());
  SeriesMeta meta = series.meta();
  meta.transforms.push_back("first_difference");
  return TimeSeries(std::move(diff), std::move(dates), std::move(meta));
}

}  // namespace ordpat
