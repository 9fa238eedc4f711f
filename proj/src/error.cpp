#include "diabpred/error.hpp"

#include <utility>

namespace diabpred {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return "Io";
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::NonNumericCell: return "NonNumericCell";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::EmptyData: return "EmptyData";
    case ErrorKind::InsufficientRows: return "InsufficientRows";
    case ErrorKind::SingleClass: return "SingleClass";
    case ErrorKind::TooFewMinority: return "TooFewMinority";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NonBinary: return "NonBinary";
    case ErrorKind::EmptyNode: return "EmptyNode";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::FeatureMismatch: return "FeatureMismatch";
    case ErrorKind::FoldDegenerate: return "FoldDegenerate";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Format: return "Format";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     const std::optional<std::size_t>& row,
                     const std::string& column) {
  std::string out = std::string(to_string(kind)) + ": " + message;
  if (row || !column.empty()) {
    out += " (";
    if (row) out += "row " + std::to_string(*row);
    if (row && !column.empty()) out += ", ";
    if (!column.empty()) out += "column " + column;
    out += ")";
  }
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> row, std::string column)
    : std::runtime_error(decorate(kind, message, row, column)),
      kind_(kind),
      row_(row),
      column_(std::move(column)) {}

}  // namespace diabpred
