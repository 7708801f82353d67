#include "ordpat/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "ordpat/error.hpp"

namespace ordpat {

const char* to_string(OrderPolicy policy) {
  return policy == OrderPolicy::require_ascending ? "require-ascending" : "sort-by-date";
}

OrderPolicy parse_order_policy(const std::string& text) {
  if (text == "require-ascending") return OrderPolicy::require_ascending;
  if (text == "sort-by-date") return OrderPolicy::sort_by_date;
  throw InvalidInputError("unknown order policy '" + text + "' (expected require-ascending or sort-by-date)");
}

std::optional<double> parse_real(std::string_view field) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v, std::chars_format::general);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<std::string> split_record(std::string_view line, char delimiter) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

namespace {

std::size_t resolve_column(const ColumnRef& ref, const std::vector<std::string>& header, bool has_header,
                           const std::string& what) {
  if (const auto* name = std::get_if<std::string>(&ref)) {
    if (has_header) {
      const auto it = std::find(header.begin(), header.end(), *name);
      if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
    }
    // A purely numeric selector falls back to a position.
    std::size_t pos = 0;
    const auto [ptr, ec] = std::from_chars(name->data(), name->data() + name->size(), pos);
    if (!name->empty() && ec == std::errc{} && ptr == name->data() + name->size()) {
      return resolve_column(ColumnRef{pos}, header, has_header, what);
    }
    throw SchemaError(what + " column '" + *name + "' not found in header");
  }
  const auto pos = std::get<std::size_t>(ref);
  if (has_header && pos >= header.size()) {
    throw SchemaError(what + " column index " + std::to_string(pos) + " out of range (" +
                      std::to_string(header.size()) + " columns)");
  }
  return pos;
}

std::string column_label(const ColumnRef& ref, const std::vector<std::string>& header, std::size_t index) {
  if (index < header.size()) return header[index];
  if (const auto* name = std::get_if<std::string>(&ref)) return *name;
  return std::to_string(index);
}

}  // namespace

TimeSeries load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");

  std::vector<std::string> header;
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (options.has_header) {
    if (!next_line()) throw EmptySeriesError("'" + path.string() + "' is empty");
    header = split_record(line, options.delimiter);
    if (!header.empty() && header[0].starts_with("\xEF\xBB\xBF")) header[0].erase(0, 3);
  }
  const std::size_t value_col = resolve_column(options.column, header, options.has_header, "value");
  std::optional<std::size_t> date_col;
  if (options.date_column) date_col = resolve_column(*options.date_column, header, options.has_header, "date");

  std::vector<double> values;
  std::vector<Date> dates;
  std::size_t skipped = 0;
  while (next_line()) {
    const auto fields = split_record(line, options.delimiter);
    std::optional<double> v;
    if (value_col < fields.size()) v = parse_real(fields[value_col]);
    std::optional<Date> t;
    if (date_col && *date_col < fields.size()) t = parse_iso_date(fields[*date_col]);
    if (!v || (date_col && !t)) {
      ++skipped;
      continue;
    }
    values.push_back(*v);
    if (t) dates.push_back(*t);
  }
  if (values.empty()) throw EmptySeriesError("no parseable rows in '" + path.string() + "'");

  if (date_col && options.order == OrderPolicy::sort_by_date) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return dates[a] < dates[b]; });
    std::vector<double> v2(values.size());
    std::vector<Date> d2(dates.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      v2[i] = values[idx[i]];
      d2[i] = dates[idx[i]];
    }
    values = std::move(v2);
    dates = std::move(d2);
  }

  SeriesMeta meta;
  meta.source = path.string();
  meta.column = column_label(options.column, header, value_col);
  meta.rows_accepted = values.size();
  meta.rows_skipped = skipped;
  return TimeSeries(std::move(values), std::move(dates), std::move(meta));
}

}  // namespace ordpat
