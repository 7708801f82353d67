#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ordpat/analysis.hpp"
#include "ordpat/census.hpp"
#include "ordpat/time_series.hpp"

namespace ordpat::io {

inline constexpr int kSchemaVersion = 1;

/// Shortest round-trip decimal; integral values keep a trailing ".0".
std::string format_real(double value);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view field);

/// Writes one CRLF-terminated record.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

nlohmann::json to_json(const SeriesMeta& meta);
nlohmann::json to_json(const Warning& warning);
nlohmann::json to_json(const PatternCensus& census);
nlohmann::json to_json(const ForbiddenCurve& curve);
nlohmann::json to_json(const OccurrencePdf& pdf);
nlohmann::json to_json(const RollingTrace& trace, const TimeSeries* dates = nullptr);
nlohmann::json to_json(const BaselineEnsemble& ensemble);
nlohmann::json to_json(const DeterminismVerdict& verdict);
nlohmann::json to_json(const SeriesReport& report, const TimeSeries* dates = nullptr);

void write_series_csv(std::ostream& out, const TimeSeries& series);
void write_curves_csv(std::ostream& out, const SeriesReport& report);
void write_pdf_csv(std::ostream& out, const OccurrencePdf& pdf);
void write_rolling_csv(std::ostream& out, const RollingTrace& trace, const TimeSeries& series);
void write_baseline_csv(std::ostream& out, const std::vector<BaselineEnsemble>& ensembles);

}  // namespace ordpat::io
