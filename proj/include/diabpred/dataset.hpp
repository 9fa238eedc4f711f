#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diabpred/matrix.hpp"

namespace diabpred {

enum class ColumnKind { Binary, Ordinal, Count };

struct ColumnSpec {
  std::string name;
  ColumnKind kind;
  double min_value;
  double max_value;

  friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

inline constexpr std::string_view kTargetColumn = "Diabetes_012";
inline constexpr std::string_view kIncomeColumn = "Income";

// The 22 columns of the health-indicators extract, in file order: the
// three-class target followed by the 21 features.
const std::vector<ColumnSpec>& canonical_schema();
const ColumnSpec* find_column_spec(std::string_view name);
std::vector<std::string> canonical_feature_names();

// Immutable named-column numeric table. Construction validates that every
// cell is finite and within its column's declared range.
class DataTable {
 public:
  DataTable(std::vector<ColumnSpec> schema, Matrix values);

  const std::vector<ColumnSpec>& schema() const noexcept { return schema_; }
  std::vector<std::string> column_names() const;
  const Matrix& values() const noexcept { return values_; }
  std::size_t n_rows() const noexcept { return values_.rows(); }
  std::size_t n_cols() const noexcept { return values_.cols(); }

  std::optional<std::size_t> column_index(std::string_view name) const;
  // Throws MissingColumn.
  std::size_t require_column(std::string_view name) const;

  DataTable select_rows(std::span<const std::size_t> indices) const;

  friend bool operator==(const DataTable&, const DataTable&) = default;

 private:
  std::vector<ColumnSpec> schema_;
  Matrix values_;
};

DataTable load_csv(const std::filesystem::path& path);
DataTable parse_csv(std::string_view text);
void write_csv(const DataTable& table, const std::filesystem::path& path);
std::string format_csv(const DataTable& table);

struct LabeledTable {
  DataTable features;
  LabelVector labels;
};

// Diabetes_012 code 0 -> 0, codes 1 and 2 -> 1; the target column is dropped.
LabeledTable binarize_target(const DataTable& table);

DataTable select_columns(const DataTable& table, std::span<const std::string> names);

struct SplitResult {
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
  std::uint64_t seed = 0;
};

// Plain shuffled split (not stratified). |test| = round(n * test_fraction);
// both index lists are returned in ascending order.
SplitResult train_test_split(std::size_t n, double test_fraction, std::uint64_t seed);

struct CorrelationMatrix {
  std::vector<std::string> labels;
  Matrix values;
  // Row-major p*p; 1 where either column has zero variance (value stored 0).
  std::vector<std::uint8_t> undefined_mask;

  bool undefined(std::size_t i, std::size_t j) const {
    return undefined_mask[i * labels.size() + j] != 0;
  }
};

CorrelationMatrix pearson_correlation(const DataTable& table);

struct HistogramTable {
  std::vector<int> categories;
  std::vector<std::size_t> counts;
};

// Counts of Income codes 1..8.
HistogramTable income_histogram(const DataTable& table);

}  // namespace diabpred
