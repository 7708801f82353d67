// Acceptance gate. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_harness.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "ordpat/analysis.hpp"
#include "ordpat/census.hpp"
#include "ordpat/ingest.hpp"
#include "ordpat/ordinal.hpp"
#include "ordpat/synth.hpp"

using namespace ordpat;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && outcome_.ok) {
      outcome_.ok = false;
      outcome_.detail = what;
    }
  }
  void note(const std::string& s) {
    if (outcome_.ok) outcome_.detail = s;
  }
  Outcome outcome() const { return outcome_; }

 private:
  Outcome outcome_;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Check&)>& body) {
  Check check;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0) {
    std::ostringstream msg;
    msg << "runtime " << secs << " s exceeds " << limit_s << " s";
    check.expect(secs < limit_s, msg.str());
  }
  const auto out = check.outcome();
  failures += !out.ok;
  std::printf("%s criterion %d: %s [%.3f s]%s%s\n", out.ok ? "PASS" : "FAIL", id, title, secs,
              out.detail.empty() ? "" : " : ", out.detail.c_str());
  std::fflush(stdout);
}

std::vector<double> uniform_values(std::size_t n, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.n = n;
  spec.seed = seed;
  const auto series = uniform_series(spec);
  return {series.values().begin(), series.values().end()};
}

std::vector<double> logistic_values(std::size_t n) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::logistic;
  spec.n = n;
  spec.x0 = 0.3;
  spec.transient = 1000;
  const auto series = logistic_series(spec);
  return {series.values().begin(), series.values().end()};
}

TimeSeries load_fixture(const std::string& name, const std::string& column = "value") {
  CsvOptions opts;
  opts.column = column;
  return load_csv(cli_harness::fixture(name), opts);
}

std::string str(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace

int main() {
  criterion(1, "logistic orbit at d=3 misses exactly (3,2,1)", 1.0, [](Check& c) {
    const auto x = logistic_values(10000);
    const auto census = build_census(x, 3);
    const auto codes = forbidden_codes(census);
    c.expect(codes.size() == 1, "forbidden count " + std::to_string(codes.size()));
    if (codes.size() == 1) c.expect(decode({3, codes[0]}) == OrdinalPattern{3, 2, 1}, decode({3, codes[0]}).to_string());
    const auto missing = oracle::missing_patterns(x, 3);
    c.expect(missing == std::vector<std::vector<int>>{{3, 2, 1}}, "oracle disagrees");
    c.note("forbidden = " + std::to_string(codes.size()));
  });

  criterion(2, "d=5 logistic plateau and uniform decay to zero", 10.0, [](Check& c) {
    const auto x = logistic_values(100000);
    const std::vector<std::size_t> prefixes{10000, 100000};
    const auto curve = forbidden_curve(x, 5, prefixes);
    const double at_1e4 = static_cast<double>(curve.points[0].forbidden);
    const double at_1e5 = static_cast<double>(curve.points[1].forbidden);
    c.expect(at_1e4 > 0, "logistic has no forbidden patterns at N=1e4");
    c.expect(at_1e5 >= 0.95 * at_1e4, "logistic n(1e5)=" + str(at_1e5) + " < 0.95 n(1e4)=" + str(at_1e4));
    int zero = 0;
    for (std::uint64_t s = 1; s <= 20; ++s) zero += forbidden_count(build_census(uniform_values(100000, s), 5)) == 0;
    c.expect(zero >= 19, "uniform reaches zero for " + std::to_string(zero) + "/20 seeds");
    c.note("logistic n(1e4)=" + str(at_1e4) + " n(1e5)=" + str(at_1e5) + ", uniform zero for " +
           std::to_string(zero) + "/20 seeds");
  });

  criterion(3, "logistic vs 20 uniform surrogates at d=5, N=2e4 is deterministic", 30.0, [](Check& c) {
    const auto x = logistic_values(20000);
    const auto observed = forbidden_count(build_census(x, 5));
    const auto ensemble = baseline(5, 20000, SurrogateKind::uniform, 20, 1);
    const auto verdict = classify(observed, ensemble, 10.0);
    c.expect(ensemble.members.size() == 20, "ensemble size");
    c.expect(verdict.classification == Classification::deterministic, "classified inconclusive");
    c.expect(verdict.ratio >= 10.0, "ratio " + str(verdict.ratio));
    c.note("observed=" + std::to_string(observed) + " baseline mean=" + str(ensemble.mean) +
           " ratio=" + str(verdict.ratio));
  });

  criterion(4, "undersampled warning whenever N <= (d+1)!", 0.0, [](Check& c) {
    c.expect(undersampled(5040, 6) && !undersampled(5041, 6), "bound at d=6 is not 5040");
    for (int d = 2; d <= 7; ++d) {
      const auto bound = factorial(d + 1);
      for (const std::size_t n : {static_cast<std::size_t>(d + 1), bound / 2, bound, bound + 1}) {
        if (n < static_cast<std::size_t>(d)) continue;
        ReportOptions opts;
        opts.dims = {d};
        opts.baseline.members = 2;
        const auto report = full_report(TimeSeries(uniform_values(n, n)), opts);
        const bool warned = std::any_of(report.warnings.begin(), report.warnings.end(), [&](const Warning& w) {
          return w.code == "undersampled" && w.d == d;
        });
        const bool expected = n <= bound;
        c.expect(warned == expected, "d=" + std::to_string(d) + " N=" + std::to_string(n) +
                                         (expected ? " missing warning" : " spurious warning"));
        const auto* r = report.find(d);
        c.expect(r && r->undersampled == expected && r->verdict && r->verdict->undersampled == expected,
                 "d=" + std::to_string(d) + " N=" + std::to_string(n) + " flag mismatch");
      }
    }
    cli_harness::TempDir dir("accept4");
    const auto path = dir.file("n5040.csv");
    cli_harness::run({"synth", "random", "--n", "5040", "--seed", "6", "--out", path});
    const auto at = cli_harness::run({"analyze", "--input", path, "--d", "6", "--members", "2"});
    c.expect(at.code == 0 && at.err.find("[undersampled] d=6") != std::string::npos, "CLI N=5040 d=6 not warned");
    cli_harness::run({"synth", "random", "--n", "5041", "--seed", "6", "--out", path});
    const auto above = cli_harness::run({"analyze", "--input", path, "--d", "6", "--members", "2"});
    c.expect(above.code == 0 && above.err.find("[undersampled]") == std::string::npos, "CLI N=5041 d=6 warned");
  });

  criterion(5, "invariant suite", 0.0, [](Check& c) {
    std::vector<std::vector<double>> inputs;
    for (std::uint64_t s = 0; s < 4; ++s) inputs.push_back(testing_helpers::noise(3000, s));
    inputs.push_back(testing_helpers::tied_noise(3000, 9));
    inputs.push_back(logistic_values(3000));
    const auto market = load_fixture("market_like.csv", "close");
    inputs.emplace_back(market.values().begin(), market.values().end());

    // Census conservation.
    for (const auto& x : inputs) {
      for (int d = 2; d <= 7; ++d) {
        const auto census = build_census(x, d);
        const auto sum = std::accumulate(census.counts.begin(), census.counts.end(), std::uint64_t{0});
        c.expect(sum == x.size() - d + 1 && census.windows_total == sum, "conservation d=" + std::to_string(d));
      }
    }

    // Curve monotonicity.
    for (const auto& x : inputs) {
      for (int d = 3; d <= 6; ++d) {
        PrefixRule rule;
        rule.points = 40;
        const auto grid = prefix_grid(d, x.size(), rule);
        const auto curve = forbidden_curve(x, d, grid);
        for (std::size_t i = 1; i < curve.points.size(); ++i)
          c.expect(curve.points[i].forbidden <= curve.points[i - 1].forbidden, "curve increased");
      }
    }

    // Strictly increasing transforms.
    const std::vector<std::function<double(double)>> transforms{
        [](double v) { return 2.0 * v; }, [](double v) { return std::exp(v / 1000.0); },
        [](double v) { return v * v * v; }, [](double v) { return std::atan(v) - 5.0; }};
    for (const auto& x : inputs) {
      for (const auto& f : transforms) {
        std::vector<double> y(x.size());
        std::transform(x.begin(), x.end(), y.begin(), f);
        for (int d = 3; d <= 6; ++d)
          c.expect(build_census(x, d).counts == build_census(y, d).counts, "transform changed the census");
      }
    }

    // encode/decode bijection.
    for (int d = kMinDimension; d <= 7; ++d) {
      std::vector<int> perm(d);
      std::iota(perm.begin(), perm.end(), 1);
      std::uint32_t expected = 0;
      do {
        const OrdinalPattern p(perm);
        const auto code = encode(p);
        c.expect(code.d == d && code.code == expected, "encode is not the lexicographic rank");
        c.expect(decode(code) == p, "decode(encode(p)) != p");
        ++expected;
      } while (std::next_permutation(perm.begin(), perm.end()));
      c.expect(expected == factorial(d), "permutation count");
    }

    // Rolling trace per slice.
    std::mt19937_64 rng(17);
    for (const auto& x : inputs) {
      const std::size_t window = 300, step = 3;
      const auto trace = rolling_forbidden(x, 4, window, step);
      std::uniform_int_distribution<std::size_t> pick(0, trace.points.size() - 1);
      for (int k = 0; k < 64; ++k) {
        const auto& pt = trace.points[pick(rng)];
        const std::span<const double> slice(x.data() + pt.end_index + 1 - window, window);
        c.expect(pt.forbidden == oracle::forbidden(slice, 4), "rolling point differs from its slice census");
      }
    }

    // Shuffle multiset conservation.
    for (const auto& x : inputs) {
      for (std::uint64_t s = 0; s < 5; ++s) {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::shuffle;
        spec.n = x.size();
        spec.seed = s;
        spec.source = std::make_shared<const TimeSeries>(x);
        const auto shuffled = shuffle_surrogate(spec);
        std::vector<double> a(shuffled.values().begin(), shuffled.values().end());
        auto b = x;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        c.expect(a == b, "shuffle changed the multiset");
      }
    }
  });

  criterion(6, "kernel forbidden counts equal the enumeration oracle (d <= 5, N <= 2000)", 5.0, [](Check& c) {
    const std::vector<std::pair<std::string, std::string>> fixtures{{"logistic.csv", "value"},
                                                                    {"uniform.csv", "value"},
                                                                    {"logistic_then_shuffled.csv", "value"},
                                                                    {"constant.csv", "value"},
                                                                    {"market_like.csv", "close"}};
    int combos = 0;
    for (const auto& [file, column] : fixtures) {
      const auto series = load_fixture(file, column);
      for (int d = kMinDimension; d <= 5; ++d) {
        for (const std::size_t n : {std::size_t(d), std::size_t(7), std::size_t(50), std::size_t(200),
                                    std::size_t(721), std::size_t(1000), std::size_t(2000)}) {
          if (n < static_cast<std::size_t>(d) || n > series.size()) continue;
          const std::span<const double> x(series.values().data(), n);
          c.expect(forbidden_count(build_census(x, d)) == oracle::forbidden(x, d),
                   file + " d=" + std::to_string(d) + " N=" + std::to_string(n));
          ++combos;
        }
      }
    }
    c.note(std::to_string(combos) + " combinations");
  });

  criterion(7, "occurrence counts: Poisson for noise, not for the logistic map", 10.0, [](Check& c) {
    constexpr std::size_t n = 12 * 120;
    std::vector<std::uint64_t> pooled;
    double mean = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto census = build_census(uniform_values(n, derive_seed(2024, s)), 5);
      pooled.insert(pooled.end(), census.counts.begin(), census.counts.end());
      mean = occurrence_pdf(census).poisson_mean();
    }
    const auto fit = oracle::poisson_fit(pooled, mean);
    c.expect(fit.p_value > 0.01, "uniform p=" + str(fit.p_value));

    const auto logistic = load_fixture("logistic.csv");
    const auto census = build_census(std::span<const double>(logistic.values().data(), n), 5);
    const auto bad = oracle::poisson_fit(census.counts, occurrence_pdf(census).poisson_mean());
    c.expect(bad.p_value < 0.01, "logistic p=" + str(bad.p_value));
    c.note("uniform p=" + str(fit.p_value) + ", logistic p=" + str(bad.p_value));
  });

  criterion(8, "every CLI command reruns byte-identically from its echoed config", 0.0, [](Check& c) {
    cli_harness::TempDir dir("accept8");
    const auto market = cli_harness::fixture("market_like.csv");
    const auto logistic = cli_harness::fixture("logistic.csv");
    const std::vector<std::vector<std::string>> commands{
        {"synth", "logistic", "--n", "3000", "--x0", "0.3"},
        {"synth", "logistic", "--n", "3000", "--seed", "5"},
        {"synth", "random", "--n", "3000", "--seed", "5"},
        {"synth", "random", "--n", "3000"},
        {"synth", "shuffle", "--input", logistic, "--seed", "5"},
        {"analyze", "--input", logistic, "--members", "5", "--seed", "5"},
        {"analyze", "--input", market, "--column", "close", "--date-column", "date", "--diff", "--baseline-kind",
         "shuffle", "--members", "4", "--rolling-window", "250", "--seed", "5"},
        {"pdf", "--input", market, "--column", "close", "--d", "4"},
        {"rolling", "--input", market, "--column", "close", "--date-column", "date", "--window", "300", "--step", "4"},
        {"baseline", "--n", "4000", "--d", "4,5", "--members", "6", "--seed", "5"},
        {"baseline", "--kind", "shuffle", "--input", logistic, "--d", "5", "--members", "4", "--seed", "5"},
    };
    int runs = 0;
    for (std::size_t i = 0; i < commands.size(); ++i) {
      for (const char* format : {"csv", "json"}) {
        auto args = commands[i];
        const auto out = dir.file("out" + std::to_string(i) + "." + format);
        args.insert(args.end(), {"--format", format, "--out", out});
        const auto first = cli_harness::run(args);
        const std::string label = args[0] + " #" + std::to_string(i) + " " + format;
        c.expect(first.code == 0, label + " exit " + std::to_string(first.code) + ": " + first.err);
        if (first.code != 0) continue;
        const auto config = std::string(format) == "csv" ? out + ".run.json" : out;
        const auto replay = dir.file("replay.json");
        std::filesystem::copy_file(config, replay, std::filesystem::copy_options::overwrite_existing);
        const auto bytes = cli_harness::slurp(out);
        const auto sidecar = std::string(format) == "csv" ? cli_harness::slurp(config) : std::string();
        std::filesystem::remove(out);
        const auto again = cli_harness::run({"--config", replay});
        c.expect(again.code == 0, label + " replay exit " + std::to_string(again.code));
        c.expect(cli_harness::slurp(out) == bytes, label + " output differs");
        if (!sidecar.empty()) c.expect(cli_harness::slurp(config) == sidecar, label + " sidecar differs");
        ++runs;
      }
    }
    c.note(std::to_string(runs) + " runs replayed");
  });

  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
