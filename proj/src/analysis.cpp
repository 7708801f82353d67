#include "ordpat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>

#include "ordpat/error.hpp"
#include "ordpat/synth.hpp"

namespace ordpat {

const char* to_string(SurrogateKind kind) { return kind == SurrogateKind::uniform ? "uniform" : "shuffle"; }

SurrogateKind parse_surrogate_kind(const std::string& text) {
  if (text == "uniform" || text == "random") return SurrogateKind::uniform;
  if (text == "shuffle") return SurrogateKind::shuffle;
  throw InvalidInputError("unknown surrogate kind '" + text + "' (expected uniform or shuffle)");
}

const char* to_string(Classification c) {
  return c == Classification::deterministic ? "deterministic" : "inconclusive";
}

BaselineEnsemble baseline(int d, std::size_t n, SurrogateKind kind, std::size_t members, std::uint64_t master_seed,
                          std::span<const double> source) {
  check_dimension(d);
  if (members == 0) throw InvalidInputError("baseline needs at least one member");
  std::shared_ptr<const TimeSeries> shared_source;
  if (kind == SurrogateKind::shuffle) {
    if (source.empty()) throw InvalidInputError("shuffle baseline needs a source series");
    if (source.size() != n) throw InvalidInputError("shuffle baseline length must equal the source length");
    shared_source = std::make_shared<const TimeSeries>(std::vector<double>(source.begin(), source.end()));
  }
  if (n < static_cast<std::size_t>(d)) {
    throw InsufficientDataError("baseline length " + std::to_string(n) + " is shorter than d=" + std::to_string(d));
  }

  BaselineEnsemble ens;
  ens.d = d;
  ens.n = n;
  ens.kind = kind;
  ens.master_seed = master_seed;
  ens.member_seeds.resize(members);
  ens.members.resize(members);
  for (std::size_t i = 0; i < members; ++i) ens.member_seeds[i] = derive_seed(master_seed, i);

  std::exception_ptr failure;
  const auto m = static_cast<std::int64_t>(members);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < m; ++i) {
    try {
      GeneratorSpec spec;
      spec.kind = kind == SurrogateKind::uniform ? GeneratorKind::uniform : GeneratorKind::shuffle;
      spec.n = n;
      spec.seed = ens.member_seeds[static_cast<std::size_t>(i)];
      spec.source = shared_source;
      const auto surrogate = generate(spec);
      ens.members[static_cast<std::size_t>(i)] = forbidden_count(build_census(surrogate, d));
    } catch (...) {
#pragma omp critical(ordpat_baseline_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  double sum = 0.0;
  for (const auto v : ens.members) sum += static_cast<double>(v);
  ens.mean = sum / static_cast<double>(members);
  double sq = 0.0;
  for (const auto v : ens.members) sq += (static_cast<double>(v) - ens.mean) * (static_cast<double>(v) - ens.mean);
  ens.std = std::sqrt(sq / static_cast<double>(members));
  ens.max = *std::max_element(ens.members.begin(), ens.members.end());
  return ens;
}

DeterminismVerdict classify(std::uint64_t observed, const BaselineEnsemble& baseline, double threshold) {
  DeterminismVerdict v;
  v.observed = observed;
  v.baseline = baseline;
  v.threshold = threshold;
  v.ratio = static_cast<double>(observed) / std::max(baseline.mean, 1.0);
  v.classification = v.ratio >= threshold ? Classification::deterministic : Classification::inconclusive;
  v.undersampled = undersampled(baseline.n, baseline.d);
  return v;
}

std::vector<std::size_t> prefix_grid(int d, std::size_t n, const PrefixRule& rule) {
  if (!rule.explicit_prefixes.empty()) return rule.explicit_prefixes;
  const std::size_t start = std::max<std::size_t>(10 * static_cast<std::size_t>(d), factorial(d + 1) + 1);
  if (start >= n || rule.points <= 1) return {n};
  std::vector<std::size_t> grid;
  const double lo = std::log(static_cast<double>(start));
  const double hi = std::log(static_cast<double>(n));
  for (std::size_t i = 0; i < rule.points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(rule.points - 1);
    auto p = static_cast<std::size_t>(std::llround(std::exp(lo + t * (hi - lo))));
    p = std::clamp(p, start, n);
    if (grid.empty() || p > grid.back()) grid.push_back(p);
  }
  if (grid.back() != n) grid.push_back(n);
  return grid;
}

std::uint64_t DimensionResult::forbidden() const {
  if (!census) throw InvalidInputError("no census for d=" + std::to_string(d));
  return forbidden_count(*census);
}

bool SeriesReport::complete() const {
  const bool dims_ok = std::all_of(dimensions.begin(), dimensions.end(), [](const auto& r) { return r.ok(); });
  return dims_ok && !rolling_error;
}

const DimensionResult* SeriesReport::find(int d) const {
  const auto it = std::find_if(dimensions.begin(), dimensions.end(), [d](const auto& r) { return r.d == d; });
  return it == dimensions.end() ? nullptr : &*it;
}

namespace {

AnalysisError describe(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return {to_string(err->kind()), err->what()};
  return {"internal", e.what()};
}

DimensionResult analyze_dimension(const TimeSeries& series, int d, const ReportOptions& options) {
  DimensionResult r;
  r.d = d;
  try {
    check_dimension(d);
    r.undersampled = undersampled(series.size(), d);
    const auto values = series.values();
    r.census = build_census(values, d, options.tie_policy);
    const auto grid = prefix_grid(d, series.size(), options.prefixes);
    r.curve = forbidden_curve(values, d, grid, options.tie_policy);
    r.pdf = occurrence_pdf(*r.census);
    const auto& b = options.baseline;
    const auto ens = baseline(d, series.size(), b.kind, b.members, b.master_seed,
                              b.kind == SurrogateKind::shuffle ? values : std::span<const double>{});
    r.verdict = classify(forbidden_count(*r.census), ens, b.threshold);
    const auto first = static_cast<double>(r.curve->points.front().forbidden);
    const auto last = static_cast<double>(r.curve->points.back().forbidden);
    r.curve_decay = (first - last) / std::max(first, 1.0);
  } catch (const std::exception& e) {
    r.error = describe(e);
    r.census.reset();
    r.curve.reset();
    r.pdf.reset();
    r.verdict.reset();
  }
  return r;
}

}  // namespace

SeriesReport full_report(const TimeSeries& series, const ReportOptions& options) {
  SeriesReport report;
  report.input = series.meta();
  report.n = series.size();
  report.options = options;

  std::vector<int> seen;
  for (const int d : options.dims) {
    if (std::find(seen.begin(), seen.end(), d) != seen.end()) continue;
    seen.push_back(d);
    report.dimensions.push_back(analyze_dimension(series, d, options));
  }

  for (const auto& r : report.dimensions) {
    if (r.undersampled) {
      report.warnings.push_back({"undersampled", r.d,
                                 "N=" + std::to_string(series.size()) + " <= (d+1)! = " +
                                     std::to_string(factorial(r.d + 1)) +
                                     "; unvisited patterns may be sampling artifacts"});
    }
    if (r.census && r.census->ties_seen > 0) {
      report.warnings.push_back({"ties", r.d,
                                 std::to_string(r.census->ties_seen) + " of " +
                                     std::to_string(r.census->windows_total) +
                                     " windows contain tied values (ranked by time order)"});
    }
    if (r.error) report.warnings.push_back({"analysis_failed", r.d, r.error->message});
  }

  if (options.rolling) {
    try {
      const auto& p = *options.rolling;
      report.rolling = rolling_forbidden(series.values(), p.d, p.window, p.step, options.tie_policy);
    } catch (const std::exception& e) {
      report.rolling_error = describe(e);
      report.warnings.push_back({"rolling_failed", options.rolling->d, report.rolling_error->message});
    }
  }
  return report;
}

}  // namespace ordpat
