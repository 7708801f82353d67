#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "ordpat/analysis.hpp"
#include "ordpat/census.hpp"
#include "ordpat/error.hpp"
#include "ordpat/ingest.hpp"
#include "ordpat/report_io.hpp"
#include "ordpat/synth.hpp"

namespace ordpat::cli {

using nlohmann::json;

json to_json(const RunConfig& c) {
  json j = {{"tool", "ordpat"},
            {"version", kToolVersion},
            {"subcommand", c.subcommand},
            {"kind", c.kind},
            {"input", c.input},
            {"column", c.column},
            {"date_column", c.date_column},
            {"delimiter", c.delimiter},
            {"header", c.header},
            {"order", c.order},
            {"first_difference", c.first_difference},
            {"dims", c.dims},
            {"tie_policy", c.tie_policy},
            {"seed", c.seed},
            {"seed_source", c.seed_source},
            {"n", c.n},
            {"transient", c.transient},
            {"baseline_kind", c.baseline_kind},
            {"members", c.members},
            {"threshold", c.threshold},
            {"curve_points", c.curve_points},
            {"prefixes", c.prefixes},
            {"window", c.window},
            {"step", c.step},
            {"rolling_step", c.rolling_step},
            {"rolling_d", c.rolling_d},
            {"format", c.format},
            {"out", c.out},
            {"curves_out", c.curves_out}};
  j["x0"] = c.x0 ? json(*c.x0) : json(nullptr);
  j["rolling_window"] = c.rolling_window ? json(*c.rolling_window) : json(nullptr);
  return j;
}

RunConfig config_from_json(const json& doc) {
  const json& j = doc.contains("run_config") ? doc.at("run_config") : doc;
  if (!j.is_object() || !j.contains("subcommand")) throw SchemaError("document holds no run configuration");
  RunConfig c;
  try {
    j.at("subcommand").get_to(c.subcommand);
    j.at("kind").get_to(c.kind);
    j.at("input").get_to(c.input);
    j.at("column").get_to(c.column);
    j.at("date_column").get_to(c.date_column);
    j.at("delimiter").get_to(c.delimiter);
    j.at("header").get_to(c.header);
    j.at("order").get_to(c.order);
    j.at("first_difference").get_to(c.first_difference);
    j.at("dims").get_to(c.dims);
    j.at("tie_policy").get_to(c.tie_policy);
    j.at("seed").get_to(c.seed);
    j.at("seed_source").get_to(c.seed_source);
    j.at("n").get_to(c.n);
    j.at("transient").get_to(c.transient);
    j.at("baseline_kind").get_to(c.baseline_kind);
    j.at("members").get_to(c.members);
    j.at("threshold").get_to(c.threshold);
    j.at("curve_points").get_to(c.curve_points);
    j.at("prefixes").get_to(c.prefixes);
    j.at("window").get_to(c.window);
    j.at("step").get_to(c.step);
    j.at("rolling_step").get_to(c.rolling_step);
    j.at("rolling_d").get_to(c.rolling_d);
    j.at("format").get_to(c.format);
    j.at("out").get_to(c.out);
    j.at("curves_out").get_to(c.curves_out);
    if (!j.at("x0").is_null()) c.x0 = j.at("x0").get<double>();
    if (!j.at("rolling_window").is_null()) c.rolling_window = j.at("rolling_window").get<std::size_t>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed run configuration: ") + e.what());
  }
  return c;
}

namespace {

struct Output {
  std::string body;
  json metadata = json::object();
  std::vector<Warning> warnings;
};

int exit_code_for(ErrorKind kind) {
  return kind == ErrorKind::insufficient_data ? kInsufficientData : kInvalidInput;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << content;
  if (!f) throw IoError("write to '" + path + "' failed");
}

json warnings_json(const std::vector<Warning>& warnings) {
  json arr = json::array();
  for (const auto& w : warnings) arr.push_back(io::to_json(w));
  return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// CSV bodies go to the output path with a sidecar carrying the config;
// JSON bodies already embed it.
void emit(const RunConfig& config, const Output& output, std::ostream& out) {
  if (config.out.empty()) {
    out << output.body;
    return;
  }
  write_file(config.out, output.body);
  if (config.format == "csv") {
    const json sidecar = {{"schema_version", io::kSchemaVersion},
                          {"kind", "run"},
                          {"run_config", to_json(config)},
                          {"metadata", output.metadata},
                          {"warnings", warnings_json(output.warnings)}};
    write_file(config.out + ".run.json", dump(sidecar));
  }
}

json document(const std::string& kind, const RunConfig& config, const std::vector<Warning>& warnings) {
  return {{"schema_version", io::kSchemaVersion},
          {"kind", kind},
          {"run_config", to_json(config)},
          {"warnings", warnings_json(warnings)}};
}

void report_warnings(const std::vector<Warning>& warnings, std::ostream& err) {
  for (const auto& w : warnings) {
    err << "warning: [" << w.code << "]";
    if (w.d) err << " d=" << *w.d;
    err << ": " << w.message << "\n";
  }
}

void check_format(const RunConfig& c) {
  if (c.format != "csv" && c.format != "json") throw InvalidInputError("format must be csv or json");
}

void dimension_warnings(const std::vector<int>& dims, std::vector<Warning>& warnings) {
  for (const int d : dims) {
    check_dimension(d);
    if (d < 4 || d > 6) {
      warnings.push_back({"dimension_outside_recommended_range", d,
                          "d=" + std::to_string(d) + " is outside the recommended range 4..6"});
    }
  }
}

int single_dimension(const RunConfig& c) {
  if (c.dims.size() != 1) throw InvalidInputError(c.subcommand + " takes exactly one dimension via --d");
  return c.dims.front();
}

TimeSeries load_input(const RunConfig& c, std::vector<Warning>& warnings) {
  if (c.input.empty()) throw InvalidInputError(c.subcommand + " needs --input");
  if (c.delimiter.size() != 1) throw InvalidInputError("delimiter must be a single character");
  CsvOptions opts;
  opts.column = c.column;
  if (!c.date_column.empty()) opts.date_column = c.date_column;
  opts.order = parse_order_policy(c.order);
  opts.delimiter = c.delimiter[0];
  opts.has_header = c.header;
  auto series = load_csv(c.input, opts);
  if (series.meta().rows_skipped > 0) {
    warnings.push_back({"rows_skipped", std::nullopt,
                        std::to_string(series.meta().rows_skipped) + " rows without a parseable value were skipped"});
  }
  if (c.first_difference) {
    series = first_difference(series);
    warnings.push_back({"first_difference", std::nullopt,
                        "analyzing first differences instead of raw values (not the plain raw-value procedure)"});
  }
  return series;
}

void undersampling_warning(std::size_t n, int d, const std::string& what, std::vector<Warning>& warnings) {
  if (undersampled(n, d)) {
    warnings.push_back({"undersampled", d,
                        what + " N=" + std::to_string(n) + " <= (d+1)! = " + std::to_string(factorial(d + 1))});
  }
}

Output cmd_synth(const RunConfig& c, std::ostream& err) {
  GeneratorSpec spec;
  spec.n = c.n;
  spec.seed = c.seed;
  spec.x0 = c.x0;
  spec.transient = c.transient;
  Output output;
  if (c.kind == "logistic") {
    spec.kind = GeneratorKind::logistic;
  } else if (c.kind == "random" || c.kind == "uniform") {
    spec.kind = GeneratorKind::uniform;
  } else if (c.kind == "shuffle") {
    spec.kind = GeneratorKind::shuffle;
    spec.source = std::make_shared<const TimeSeries>(load_input(c, output.warnings));
    spec.n = spec.source->size();
  } else {
    throw InvalidInputError("synth kind must be logistic, random or shuffle");
  }
  if (spec.n == 0) throw InvalidInputError("synth needs --n >= 1");

  const auto series = generate(spec);
  output.metadata = {{"generator", to_string(spec.kind)},
                     {"engine", kEngineName},
                     {"algorithm", series.meta().generator},
                     {"seed", spec.seed},
                     {"n", series.size()}};
  if (spec.kind == GeneratorKind::logistic) {
    output.metadata["x0"] = resolve_x0(spec);
    output.metadata["transient"] = spec.transient;
  }
  err << "generator: " << output.metadata.dump() << "\n";

  if (c.format == "csv") {
    std::ostringstream body;
    io::write_series_csv(body, series);
    output.body = body.str();
  } else {
    json doc = document("series", c, output.warnings);
    doc["metadata"] = output.metadata;
    doc["values"] = series.values();
    output.body = dump(doc);
  }
  return output;
}

int cmd_analyze(const RunConfig& c, Output& output) {
  dimension_warnings(c.dims, output.warnings);
  const auto series = load_input(c, output.warnings);

  ReportOptions opts;
  opts.dims = c.dims;
  opts.tie_policy = parse_tie_policy(c.tie_policy);
  opts.prefixes.points = c.curve_points;
  opts.prefixes.explicit_prefixes = c.prefixes;
  opts.baseline.kind = parse_surrogate_kind(c.baseline_kind);
  opts.baseline.members = c.members;
  opts.baseline.master_seed = c.seed;
  opts.baseline.threshold = c.threshold;
  if (c.rolling_window) opts.rolling = RollingParams{c.rolling_d, *c.rolling_window, c.rolling_step};

  const auto report = full_report(series, opts);
  output.warnings.insert(output.warnings.end(), report.warnings.begin(), report.warnings.end());

  json summary = json::array();
  for (const auto& r : report.dimensions) {
    json s = {{"d", r.d}};
    if (r.verdict) {
      s["forbidden"] = r.verdict->observed;
      s["ratio"] = r.verdict->ratio;
      s["classification"] = to_string(r.verdict->classification);
    } else {
      s["error"] = r.error ? r.error->message : "";
    }
    summary.push_back(s);
  }
  output.metadata = {{"n", report.n}, {"dimensions", summary}};

  if (c.format == "csv") {
    std::ostringstream body;
    io::write_curves_csv(body, report);
    output.body = body.str();
  } else {
    json doc = io::to_json(report, &series);
    doc["run_config"] = to_json(c);
    doc["warnings"] = warnings_json(output.warnings);
    output.body = dump(doc);
  }
  if (!c.curves_out.empty()) {
    std::ostringstream curves;
    io::write_curves_csv(curves, report);
    write_file(c.curves_out, curves.str());
  }

  if (report.complete()) return kOk;
  for (const auto& r : report.dimensions) {
    if (r.error && r.error->kind == "insufficient_data") return kInsufficientData;
  }
  if (report.rolling_error && report.rolling_error->kind == "insufficient_data") return kInsufficientData;
  return kInvalidInput;
}

Output cmd_pdf(const RunConfig& c) {
  Output output;
  const int d = single_dimension(c);
  dimension_warnings(c.dims, output.warnings);
  const auto series = load_input(c, output.warnings);
  undersampling_warning(series.size(), d, "series", output.warnings);
  const auto census = build_census(series, d, parse_tie_policy(c.tie_policy));
  if (census.ties_seen > 0) {
    output.warnings.push_back({"ties", d, std::to_string(census.ties_seen) + " windows contain tied values"});
  }
  const auto pdf = occurrence_pdf(census);
  output.metadata = {{"d", d},
                     {"windows_total", pdf.windows_total},
                     {"zero_count", pdf.zero_count},
                     {"poisson_mean", pdf.poisson_mean()},
                     {"ties_seen", census.ties_seen}};
  if (c.format == "csv") {
    std::ostringstream body;
    io::write_pdf_csv(body, pdf);
    output.body = body.str();
  } else {
    json doc = document("pdf", c, output.warnings);
    doc["pdf"] = io::to_json(pdf);
    doc["ties_seen"] = census.ties_seen;
    output.body = dump(doc);
  }
  return output;
}

Output cmd_rolling(const RunConfig& c) {
  Output output;
  const int d = single_dimension(c);
  dimension_warnings(c.dims, output.warnings);
  const auto series = load_input(c, output.warnings);
  undersampling_warning(c.window, d, "window", output.warnings);
  const auto trace = rolling_forbidden(series.values(), d, c.window, c.step, parse_tie_policy(c.tie_policy));
  output.metadata = {{"d", d}, {"window", c.window}, {"step", c.step}, {"points", trace.points.size()}};
  if (c.format == "csv") {
    std::ostringstream body;
    io::write_rolling_csv(body, trace, series);
    output.body = body.str();
  } else {
    json doc = document("rolling", c, output.warnings);
    doc["trace"] = io::to_json(trace, &series);
    output.body = dump(doc);
  }
  return output;
}

Output cmd_baseline(const RunConfig& c) {
  Output output;
  dimension_warnings(c.dims, output.warnings);
  const auto kind = parse_surrogate_kind(c.kind.empty() ? c.baseline_kind : c.kind);
  std::optional<TimeSeries> source;
  std::size_t n = c.n;
  if (kind == SurrogateKind::shuffle) {
    source = load_input(c, output.warnings);
    if (n != 0 && n != source->size()) throw InvalidInputError("--n must match the input length for shuffle baselines");
    n = source->size();
  }
  if (n == 0) throw InvalidInputError("baseline needs --n >= 1");

  std::vector<BaselineEnsemble> ensembles;
  json summary = json::array();
  for (const int d : c.dims) {
    undersampling_warning(n, d, "surrogate", output.warnings);
    ensembles.push_back(baseline(d, n, kind, c.members, c.seed, source ? source->values() : std::span<const double>{}));
    const auto& e = ensembles.back();
    summary.push_back({{"d", d}, {"mean", e.mean}, {"std", e.std}, {"max", e.max}});
  }
  output.metadata = {{"n", n}, {"kind", to_string(kind)}, {"master_seed", c.seed}, {"ensembles", summary}};
  if (c.format == "csv") {
    std::ostringstream body;
    io::write_baseline_csv(body, ensembles);
    output.body = body.str();
  } else {
    json doc = document("baseline", c, output.warnings);
    json arr = json::array();
    for (const auto& e : ensembles) arr.push_back(io::to_json(e));
    doc["ensembles"] = arr;
    output.body = dump(doc);
  }
  return output;
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    check_format(config);
    Output output;
    int code = kOk;
    if (config.subcommand == "synth") {
      output = cmd_synth(config, err);
    } else if (config.subcommand == "analyze") {
      code = cmd_analyze(config, output);
    } else if (config.subcommand == "pdf") {
      output = cmd_pdf(config);
    } else if (config.subcommand == "rolling") {
      output = cmd_rolling(config);
    } else if (config.subcommand == "baseline") {
      output = cmd_baseline(config);
    } else {
      throw InvalidInputError("unknown subcommand '" + config.subcommand + "'");
    }
    report_warnings(output.warnings, err);
    emit(config, output, out);
    if (code != kOk) err << "error: analysis incomplete; see per-dimension errors in the report\n";
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

namespace {

std::optional<std::uint64_t> parse_u64(const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

void add_input_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--input", c.input, "Delimited text file");
  sub->add_option("--column", c.column, "Value column: header name or 0-based position")->capture_default_str();
  sub->add_option("--date-column", c.date_column, "Optional ISO-8601 date column");
  sub->add_option("--delimiter", c.delimiter, "Field delimiter")->capture_default_str();
  sub->add_flag("!--no-header", c.header, "Input has no header row");
  sub->add_option("--order", c.order, "require-ascending | sort-by-date")
      ->check(CLI::IsMember({"require-ascending", "sort-by-date"}))
      ->capture_default_str();
  sub->add_flag("--diff", c.first_difference, "Analyze first differences instead of raw values");
}

void add_output_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "Output path (stdout when omitted)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forbidden ordinal pattern analysis of scalar time series", "ordpat"};
  app.set_version_flag("--version", kToolVersion);
  std::string config_path;
  app.add_option("--config", config_path, "Re-run a configuration echoed by an earlier run (sidecar or JSON output)");

  RunConfig c;
  std::uint64_t seed_flag = 0;
  double x0_flag = 0.0;
  std::size_t rolling_window_flag = 0;

  auto* synth = app.add_subcommand("synth", "Generate a synthetic series");
  synth->add_option("kind", c.kind, "logistic | random | shuffle")
      ->required()
      ->check(CLI::IsMember({"logistic", "random", "shuffle"}));
  synth->add_option("--n", c.n, "Number of samples");
  auto* x0_opt = synth->add_option("--x0", x0_flag, "Logistic initial condition in (0,1)");
  synth->add_option("--transient", c.transient, "Discarded logistic iterations")->capture_default_str();
  add_input_options(synth, c);
  add_output_options(synth, c);

  auto* analyze = app.add_subcommand("analyze", "Census, n(d,N) curves, occurrence PDFs and verdicts");
  add_input_options(analyze, c);
  analyze->add_option("--d", c.dims, "Dimensions, comma separated (default 4,5,6)")->delimiter(',');
  analyze->add_option("--baseline-kind", c.baseline_kind, "uniform | shuffle")
      ->check(CLI::IsMember({"uniform", "shuffle"}));
  analyze->add_option("--members", c.members, "Baseline ensemble size")->capture_default_str();
  analyze->add_option("--threshold", c.threshold, "Determinism ratio threshold")->capture_default_str();
  analyze->add_option("--curve-points", c.curve_points, "Prefixes on the log grid")->capture_default_str();
  analyze->add_option("--prefixes", c.prefixes, "Explicit prefix lengths, comma separated")->delimiter(',');
  auto* rw_opt = analyze->add_option("--rolling-window", rolling_window_flag, "Also compute a rolling trace");
  analyze->add_option("--rolling-step", c.rolling_step, "Rolling step")->capture_default_str();
  analyze->add_option("--rolling-d", c.rolling_d, "Rolling dimension")->capture_default_str();
  analyze->add_option("--curves", c.curves_out, "Also write flat d,N,forbidden CSV here");
  add_output_options(analyze, c);

  auto* pdf = app.add_subcommand("pdf", "Occurrence-count distribution over visited patterns");
  add_input_options(pdf, c);
  pdf->add_option("--d", c.dims, "Dimension (default 5)")->delimiter(',');
  add_output_options(pdf, c);

  auto* rolling = app.add_subcommand("rolling", "Forbidden count over a sliding window");
  add_input_options(rolling, c);
  rolling->add_option("--d", c.dims, "Dimension (default 5)")->delimiter(',');
  rolling->add_option("--window", c.window, "Window length in samples")->capture_default_str();
  rolling->add_option("--step", c.step, "Step between windows")->capture_default_str();
  add_output_options(rolling, c);

  auto* base = app.add_subcommand("baseline", "Forbidden counts of a surrogate ensemble");
  base->add_option("--kind", c.kind, "uniform | shuffle")->check(CLI::IsMember({"uniform", "random", "shuffle"}));
  base->add_option("--n", c.n, "Surrogate length (uniform)");
  base->add_option("--d", c.dims, "Dimensions, comma separated (default 4,5,6)")->delimiter(',');
  base->add_option("--members", c.members, "Ensemble size")->capture_default_str();
  add_input_options(base, c);
  add_output_options(base, c);

  for (auto* sub : {synth, analyze, pdf, rolling, base}) {
    sub->add_option("--seed", seed_flag, "Master seed (falls back to $ORDPAT_SEED, then 0)");
  }
  for (auto* sub : {analyze, pdf, rolling}) {
    sub->add_option("--tie-policy", c.tie_policy, "stable | reject")->check(CLI::IsMember({"stable", "reject"}));
  }
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  if (!config_path.empty()) {
    if (!app.get_subcommands().empty()) {
      err << "error: --config cannot be combined with a subcommand\n";
      return kInvalidInput;
    }
    try {
      std::ifstream f(config_path);
      if (!f) throw IoError("cannot open '" + config_path + "'");
      json doc;
      try {
        doc = json::parse(f);
      } catch (const json::exception& e) {
        throw SchemaError(std::string("cannot parse config: ") + e.what());
      }
      return execute(config_from_json(doc), out, err);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return exit_code_for(e.kind());
    }
  }

  const auto subs = app.get_subcommands();
  if (subs.empty()) {
    err << app.help();
    return kInvalidInput;
  }
  c.subcommand = subs.front()->get_name();

  if (subs.front()->count("--seed") > 0) {
    c.seed = seed_flag;
    c.seed_source = "flag";
  } else if (const char* env = std::getenv(kSeedEnv); env && *env) {
    const auto parsed = parse_u64(env);
    if (!parsed) {
      err << "error: " << kSeedEnv << "='" << env << "' is not an unsigned 64-bit integer\n";
      return kInvalidInput;
    }
    c.seed = *parsed;
    c.seed_source = "env";
  }
  if (x0_opt->count() > 0) c.x0 = x0_flag;
  if (rw_opt->count() > 0) c.rolling_window = rolling_window_flag;

  if (c.dims.empty()) {
    if (c.subcommand == "analyze" || c.subcommand == "baseline") c.dims = {4, 5, 6};
    if (c.subcommand == "pdf" || c.subcommand == "rolling") c.dims = {5};
  }
  if (c.format.empty()) c.format = c.subcommand == "analyze" ? "json" : "csv";
  if (c.subcommand == "baseline" && c.kind.empty()) c.kind = "uniform";
  if (c.subcommand == "baseline" && c.kind == "random") c.kind = "uniform";

  return execute(c, out, err);
}

}  // namespace ordpat::cli
