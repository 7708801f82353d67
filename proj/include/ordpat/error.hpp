#pragma once

#include <stdexcept>
#include <string>

namespace ordpat {

/// Broad failure category. The CLI maps these onto exit codes.
enum class ErrorKind {
  invalid_input,
  tie,
  range,
  insufficient_data,
  degenerate_seed,
  io,
  schema,
  empty_series,
  ordering,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class TypedError : public Error {
 public:
  explicit TypedError(const std::string& what) : Error(K, what) {}
};

using InvalidInputError = TypedError<ErrorKind::invalid_input>;
using TieError = TypedError<ErrorKind::tie>;
using RangeError = TypedError<ErrorKind::range>;
using InsufficientDataError = TypedError<ErrorKind::insufficient_data>;
using DegenerateSeedError = TypedError<ErrorKind::degenerate_seed>;
using IoError = TypedError<ErrorKind::io>;
using SchemaError = TypedError<ErrorKind::schema>;
using EmptySeriesError = TypedError<ErrorKind::empty_series>;
using OrderingError = TypedError<ErrorKind::ordering>;

}  // namespace ordpat
