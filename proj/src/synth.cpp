#include "ordpat/synth.hpp"

#include <string>
#include <utility>

#include "ordpat/error.hpp"

namespace ordpat {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + (index + 1) * kGolden);
}

double unit_open(Engine& engine) {
  for (;;) {
    const std::uint64_t bits = engine() >> 11;
    if (bits != 0) return static_cast<double>(bits) * 0x1.0p-53;
  }
}

std::uint64_t bounded(Engine& engine, std::uint64_t bound) {
  // Rejects the low (2^64 mod bound) values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine();
    if (r >= threshold) return r % bound;
  }
}

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::logistic: return "logistic";
    case GeneratorKind::uniform: return "uniform";
    case GeneratorKind::shuffle: return "shuffle";
  }
  return "unknown";
}

double resolve_x0(const GeneratorSpec& spec) {
  if (spec.x0) return *spec.x0;
  Engine engine(derive_seed(spec.seed, 0));
  return 0.1 + 0.8 * unit_open(engine);
}

namespace {

void require_length(const GeneratorSpec& spec) {
  if (spec.n == 0) throw InvalidInputError("generator length n must be at least 1");
}

bool degenerate_start(double x0) { return x0 == 0.25 || x0 == 0.5 || x0 == 0.75; }

}  // namespace

TimeSeries logistic_series(const GeneratorSpec& spec) {
  require_length(spec);
  const double x0 = resolve_x0(spec);
  if (!(x0 > 0.0 && x0 < 1.0)) {
    throw DegenerateSeedError("logistic x0=" + std::to_string(x0) + " must lie strictly inside (0, 1)");
  }
  if (degenerate_start(x0)) {
    throw DegenerateSeedError("logistic x0=" + std::to_string(x0) + " reaches a fixed point and yields a trivial orbit");
  }
  double x = x0;
  for (std::size_t i = 0; i < spec.transient; ++i) x = 4.0 * x * (1.0 - x);
  std::vector<double> values(spec.n);
  for (auto& v : values) {
    v = x;
    x = 4.0 * x * (1.0 - x);
  }
  // Equal neighbours mean the rounded orbit sits on a fixed point (0 or 0.75).
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] == values[i - 1]) {
      throw DegenerateSeedError("logistic orbit from x0=" + std::to_string(x0) + " collapsed onto a fixed point");
    }
  }

  SeriesMeta meta;
  meta.source = "synth:logistic";
  meta.column = "value";
  meta.rows_accepted = spec.n;
  meta.generator = "logistic x->4x(1-x)";
  meta.seed = spec.seed;
  return TimeSeries(std::move(values), std::move(meta));
}

TimeSeries uniform_series(const GeneratorSpec& spec) {
  require_length(spec);
  Engine engine(spec.seed);
  std::vector<double> values(spec.n);
  for (auto& v : values) v = unit_open(engine);

  SeriesMeta meta;
  meta.source = "synth:uniform";
  meta.column = "value";
  meta.rows_accepted = spec.n;
  meta.generator = kEngineName;
  meta.seed = spec.seed;
  return TimeSeries(std::move(values), std::move(meta));
}

TimeSeries shuffle_surrogate(const GeneratorSpec& spec) {
  if (!spec.source) throw InvalidInputError("shuffle surrogate needs a source series");
  const TimeSeries& source = *spec.source;
  if (source.size() < 2) throw InsufficientDataError("shuffle surrogate needs at least two samples");

  std::vector<double> values(source.values().begin(), source.values().end());
  Engine engine(spec.seed);
  for (std::size_t i = values.size() - 1; i > 0; --i) {
    std::swap(values[i], values[bounded(engine, i + 1)]);
  }

  SeriesMeta meta = source.meta();
  meta.source = "synth:shuffle(" + source.meta().source + ")";
  meta.generator = std::string(kEngineName) + " fisher-yates";
  meta.seed = spec.seed;
  std::vector<Date> dates(source.timestamps().begin(), source.timestamps().end());
  return TimeSeries(std::move(values), std::move(dates), std::move(meta));
}

TimeSeries generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::logistic: return logistic_series(spec);
    case GeneratorKind::uniform: return uniform_series(spec);
    case GeneratorKind::shuffle: return shuffle_surrogate(spec);
  }
  throw InvalidInputError("unknown generator kind");
}

}  // namespace ordpat
