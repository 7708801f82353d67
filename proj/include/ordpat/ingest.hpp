#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include "ordpat/time_series.hpp"

namespace ordpat {

/// Column selector: header name or 0-based position.
using ColumnRef = std::variant<std::string, std::size_t>;

enum class OrderPolicy { require_ascending, sort_by_date };

const char* to_string(OrderPolicy policy);
OrderPolicy parse_order_policy(const std::string& text);

struct CsvOptions {
  ColumnRef column = std::string("value");
  std::optional<ColumnRef> date_column;
  OrderPolicy order = OrderPolicy::require_ascending;
  char delimiter = ',';
  bool has_header = true;
};

/// Parses a finite real in C locale syntax with '.' as the only decimal
/// separator. The whole field must be consumed.
std::optional<double> parse_real(std::string_view field);

/// Splits one delimited record; double-quoted fields may contain the
/// delimiter and "" escapes.
std::vector<std::string> split_record(std::string_view line, char delimiter);

/// Loads one numeric column. Rows whose value (or date, when a date column
/// is selected) does not parse are skipped and counted in meta.
TimeSeries load_csv(const std::filesystem::path& path, const CsvOptions& options);

}  // namespace ordpat
