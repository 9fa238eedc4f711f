#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace diabpred {

enum class ErrorKind {
  Io,
  MissingColumn,
  NonNumericCell,
  OutOfRange,
  EmptyData,
  InsufficientRows,
  SingleClass,
  TooFewMinority,
  DimensionMismatch,
  LengthMismatch,
  NonBinary,
  EmptyNode,
  BadParams,
  FeatureMismatch,
  FoldDegenerate,
  Config,
  Format,
};

const char* to_string(ErrorKind kind);

// Data errors carry the 1-based data row (header excluded) and column name
// when they are tied to a specific cell.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> row = std::nullopt,
        std::string column = {});

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> row_;
  std::string column_;
};

}  // namespace diabpred
