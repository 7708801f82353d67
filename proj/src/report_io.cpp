#include "ordpat/report_io.hpp"

#include <charconv>
#include <ostream>

#include "ordpat/ordinal.hpp"

namespace ordpat::io {

using nlohmann::json;

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << "\r\n";
}

json to_json(const SeriesMeta& meta) {
  json j = {{"source", meta.source},
            {"column", meta.column},
            {"rows_accepted", meta.rows_accepted},
            {"rows_skipped", meta.rows_skipped},
            {"transforms", meta.transforms}};
  if (!meta.generator.empty()) j["generator"] = meta.generator;
  if (meta.seed) j["seed"] = *meta.seed;
  return j;
}

json to_json(const Warning& w) {
  json j = {{"code", w.code}, {"message", w.message}};
  j["d"] = w.d ? json(*w.d) : json(nullptr);
  return j;
}

json to_json(const PatternCensus& census) {
  json missing = json::array();
  // Listing every missing pattern is only useful while d! stays small.
  if (census.counts.size() <= 720) {
    for (const auto code : forbidden_codes(census)) {
      missing.push_back(decode({census.d, code}).order());
    }
  }
  return {{"d", census.d},
          {"patterns", census.counts.size()},
          {"windows_total", census.windows_total},
          {"ties_seen", census.ties_seen},
          {"forbidden", forbidden_count(census)},
          {"forbidden_patterns", missing}};
}

json to_json(const ForbiddenCurve& curve) {
  json points = json::array();
  for (const auto& p : curve.points) points.push_back({{"n", p.n}, {"forbidden", p.forbidden}});
  return {{"d", curve.d}, {"points", points}};
}

json to_json(const OccurrencePdf& pdf) {
  json rows = json::array();
  for (std::size_t i = 0; i < pdf.support.size(); ++i) {
    rows.push_back({{"k", pdf.support[i]}, {"probability", pdf.probability[i]}});
  }
  return {{"d", pdf.d},
          {"windows_total", pdf.windows_total},
          {"zero_count", pdf.zero_count},
          {"poisson_mean", pdf.poisson_mean()},
          {"rows", rows}};
}

json to_json(const RollingTrace& trace, const TimeSeries* dates) {
  json points = json::array();
  for (const auto& p : trace.points) {
    json j = {{"end_index", p.end_index}, {"forbidden", p.forbidden}};
    if (dates && dates->has_timestamps()) j["end_date"] = format_iso_date(dates->timestamps()[p.end_index]);
    points.push_back(std::move(j));
  }
  return {{"d", trace.d}, {"window", trace.window_len}, {"step", trace.step}, {"points", points}};
}

json to_json(const BaselineEnsemble& e) {
  return {{"d", e.d},
          {"n", e.n},
          {"kind", to_string(e.kind)},
          {"master_seed", e.master_seed},
          {"seed_rule", "member i uses splitmix64(master_seed + (i+1) * 0x9E3779B97F4A7C15)"},
          {"member_seeds", e.member_seeds},
          {"members", e.members},
          {"mean", e.mean},
          {"std", e.std},
          {"max", e.max}};
}

json to_json(const DeterminismVerdict& v) {
  return {{"observed", v.observed},
          {"baseline", to_json(v.baseline)},
          {"threshold", v.threshold},
          {"ratio", v.ratio},
          {"classification", to_string(v.classification)},
          {"undersampled", v.undersampled}};
}

namespace {

json to_json(const AnalysisError& e) { return {{"kind", e.kind}, {"message", e.message}}; }

json to_json(const DimensionResult& r) {
  json j = {{"d", r.d}, {"undersampled", r.undersampled}};
  if (r.error) {
    j["error"] = to_json(*r.error);
    return j;
  }
  j["error"] = nullptr;
  j["census"] = io::to_json(*r.census);
  j["curve"] = io::to_json(*r.curve);
  j["curve_decay"] = r.curve_decay;
  j["pdf"] = io::to_json(*r.pdf);
  j["verdict"] = io::to_json(*r.verdict);
  return j;
}

}  // namespace

json to_json(const SeriesReport& report, const TimeSeries* dates) {
  json dims = json::array();
  for (const auto& r : report.dimensions) dims.push_back(to_json(r));
  json warnings = json::array();
  for (const auto& w : report.warnings) warnings.push_back(to_json(w));

  const auto& o = report.options;
  json params = {{"dims", o.dims},
                 {"tie_policy", to_string(o.tie_policy)},
                 {"curve_points", o.prefixes.points},
                 {"explicit_prefixes", o.prefixes.explicit_prefixes},
                 {"baseline_kind", to_string(o.baseline.kind)},
                 {"baseline_members", o.baseline.members},
                 {"master_seed", o.baseline.master_seed},
                 {"threshold", o.baseline.threshold}};
  params["rolling"] = o.rolling ? json{{"d", o.rolling->d}, {"window", o.rolling->window}, {"step", o.rolling->step}}
                                : json(nullptr);

  json j = {{"schema_version", kSchemaVersion},
            {"kind", "report"},
            {"input", to_json(report.input)},
            {"n", report.n},
            {"parameters", params},
            {"dimensions", dims},
            {"warnings", warnings}};
  j["rolling"] = report.rolling ? io::to_json(*report.rolling, dates) : json(nullptr);
  j["rolling_error"] = report.rolling_error ? to_json(*report.rolling_error) : json(nullptr);
  return j;
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
  write_csv_row(out, {"index", "value"});
  const auto v = series.values();
  for (std::size_t i = 0; i < v.size(); ++i) write_csv_row(out, {std::to_string(i), format_real(v[i])});
}

void write_curves_csv(std::ostream& out, const SeriesReport& report) {
  write_csv_row(out, {"d", "N", "forbidden"});
  for (const auto& r : report.dimensions) {
    if (!r.curve) continue;
    for (const auto& p : r.curve->points) {
      write_csv_row(out, {std::to_string(r.d), std::to_string(p.n), std::to_string(p.forbidden)});
    }
  }
}

void write_pdf_csv(std::ostream& out, const OccurrencePdf& pdf) {
  write_csv_row(out, {"k", "probability"});
  for (std::size_t i = 0; i < pdf.support.size(); ++i) {
    write_csv_row(out, {std::to_string(pdf.support[i]), format_real(pdf.probability[i])});
  }
}

void write_rolling_csv(std::ostream& out, const RollingTrace& trace, const TimeSeries& series) {
  const bool dated = series.has_timestamps();
  if (dated) {
    write_csv_row(out, {"end_index", "end_date", "forbidden"});
  } else {
    write_csv_row(out, {"end_index", "forbidden"});
  }
  for (const auto& p : trace.points) {
    if (dated) {
      write_csv_row(out, {std::to_string(p.end_index), format_iso_date(series.timestamps()[p.end_index]),
                          std::to_string(p.forbidden)});
    } else {
      write_csv_row(out, {std::to_string(p.end_index), std::to_string(p.forbidden)});
    }
  }
}

void write_baseline_csv(std::ostream& out, const std::vector<BaselineEnsemble>& ensembles) {
  write_csv_row(out, {"d", "member", "seed", "forbidden"});
  for (const auto& e : ensembles) {
    for (std::size_t i = 0; i < e.members.size(); ++i) {
      write_csv_row(out, {std::to_string(e.d), std::to_string(i), std::to_string(e.member_seeds[i]),
                          std::to_string(e.members[i])});
    }
  }
}

}  // namespace ordpat::io
