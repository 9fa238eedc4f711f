#include "diabpred/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "diabpred/error.hpp"
#include "diabpred/rng.hpp"

namespace diabpred {

namespace {

ColumnSpec binary(const char* name) { return {name, ColumnKind::Binary, 0, 1}; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_number(std::string_view field) {
  if (field.empty()) return std::nullopt;
  if (field.front() == '+') field.remove_prefix(1);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
  return value;
}

void validate_cell(double v, const ColumnSpec& spec, std::size_t row) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::NonNumericCell, "non-finite value", row, spec.name);
  }
  if (v < spec.min_value || v > spec.max_value) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "value %g outside [%g, %g]", v, spec.min_value,
                  spec.max_value);
    throw Error(ErrorKind::OutOfRange, buf, row, spec.name);
  }
}

std::string format_value(double v) {
  char buf[40];
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", v);
  }
  return buf;
}

}  // namespace

const std::vector<ColumnSpec>& canonical_schema() {
  static const std::vector<ColumnSpec> schema = {
      {"Diabetes_012", ColumnKind::Ordinal, 0, 2},
      binary("HighBP"),
      binary("HighChol"),
      binary("CholCheck"),
      {"BMI", ColumnKind::Count, 1, 100},
      binary("Smoker"),
      binary("Stroke"),
      binary("HeartDiseaseorAttack"),
      binary("PhysActivity"),
      binary("Fruits"),
      binary("Veggies"),
      binary("HvyAlcoholConsump"),
      binary("AnyHealthcare"),
      binary("NoDocbcCost"),
      {"GenHlth", ColumnKind::Ordinal, 1, 5},
      {"MentHlth", ColumnKind::Count, 0, 30},
      {"PhysHlth", ColumnKind::Count, 0, 30},
      binary("DiffWalk"),
      binary("Sex"),
      {"Age", ColumnKind::Ordinal, 1, 13},
      {"Education", ColumnKind::Ordinal, 1, 6},
      {"Income", ColumnKind::Ordinal, 1, 8},
  };
  return schema;
}

const ColumnSpec* find_column_spec(std::string_view name) {
  for (const auto& spec : canonical_schema()) {
    if (spec.name == name) return &spec;
  }
  return nullptr;
}

std::vector<std::string> canonical_feature_names() {
  std::vector<std::string> names;
  for (const auto& spec : canonical_schema()) {
    if (spec.name != kTargetColumn) names.push_back(spec.name);
  }
  return names;
}

DataTable::DataTable(std::vector<ColumnSpec> schema, Matrix values)
    : schema_(std::move(schema)), values_(std::move(values)) {
  if (schema_.size() != values_.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                "schema has " + std::to_string(schema_.size()) + " columns, data has " +
                    std::to_string(values_.cols()));
  }
  for (std::size_t r = 0; r < values_.rows(); ++r) {
    for (std::size_t c = 0; c < schema_.size(); ++c) {
      validate_cell(values_(r, c), schema_[c], r + 1);
    }
  }
}

std::vector<std::string> DataTable::column_names() const {
  std::vector<std::string> names;
  names.reserve(schema_.size());
  for (const auto& s : schema_) names.push_back(s.name);
  return names;
}

std::optional<std::size_t> DataTable::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < schema_.size(); ++i) {
    if (schema_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t DataTable::require_column(std::string_view name) const {
  if (auto idx = column_index(name)) return *idx;
  throw Error(ErrorKind::MissingColumn, "table has no column '" + std::string(name) + "'",
              std::nullopt, std::string(name));
}

DataTable DataTable::select_rows(std::span<const std::size_t> indices) const {
  return DataTable(schema_, values_.select_rows(indices));
}

DataTable parse_csv(std::string_view text) {
  const auto& schema = canonical_schema();
  std::size_t pos = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    line = text.substr(pos, nl - pos);
    pos = nl + 1;
    return true;
  };

  std::string_view header_line;
  if (!next_line(header_line) || trim(header_line).empty()) {
    throw Error(ErrorKind::EmptyData, "file has no header line");
  }
  if (header_line.starts_with("\xEF\xBB\xBF")) header_line.remove_prefix(3);
  const auto header = split_fields(header_line);

  // source field index for each canonical column
  std::vector<std::size_t> source(schema.size());
  for (std::size_t c = 0; c < schema.size(); ++c) {
    auto it = std::find(header.begin(), header.end(), schema[c].name);
    if (it == header.end()) {
      throw Error(ErrorKind::MissingColumn,
                  "header lacks required column '" + schema[c].name + "'", std::nullopt,
                  schema[c].name);
    }
    source[c] = static_cast<std::size_t>(it - header.begin());
  }

  std::vector<double> data;
  data.reserve(text.size() / 3);
  std::size_t row = 0;
  std::string_view line;
  while (next_line(line)) {
    if (trim(line).empty()) continue;
    ++row;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::Format,
                  "expected " + std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()),
                  row);
    }
    for (std::size_t c = 0; c < schema.size(); ++c) {
      const auto value = parse_number(fields[source[c]]);
      if (!value) {
        throw Error(ErrorKind::NonNumericCell,
                    "cannot parse '" + std::string(fields[source[c]]) + "' as a number", row,
                    schema[c].name);
      }
      validate_cell(*value, schema[c], row);
      if (*value != std::floor(*value)) {
        throw Error(ErrorKind::OutOfRange, "coded column holds a non-integer value", row,
                    schema[c].name);
      }
      data.push_back(*value);
    }
  }
  if (row == 0) throw Error(ErrorKind::EmptyData, "file has no data rows");
  return DataTable(schema, Matrix(row, schema.size(), std::move(data)));
}

DataTable load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "failed reading '" + path.string() + "'");
  return parse_csv(buffer.str());
}

std::string format_csv(const DataTable& table) {
  std::string out;
  const auto names = table.column_names();
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (c) out += ',';
    out += names[c];
  }
  out += '\n';
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    for (std::size_t c = 0; c < table.n_cols(); ++c) {
      if (c) out += ',';
      out += format_value(table.values()(r, c));
    }
    out += '\n';
  }
  return out;
}

void write_csv(const DataTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << format_csv(table);
}

LabeledTable binarize_target(const DataTable& table) {
  const auto target = table.require_column(kTargetColumn);
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < table.n_cols(); ++c) {
    if (c != target) keep.push_back(c);
  }
  std::vector<ColumnSpec> schema;
  for (auto c : keep) schema.push_back(table.schema()[c]);

  LabelVector labels;
  labels.values.resize(table.n_rows());
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    labels.values[r] = table.values()(r, target) != 0.0 ? 1 : 0;
  }
  return {DataTable(std::move(schema), table.values().select_cols(keep)), std::move(labels)};
}

DataTable select_columns(const DataTable& table, std::span<const std::string> names) {
  std::vector<std::size_t> idx;
  std::vector<ColumnSpec> schema;
  for (const auto& name : names) {
    const auto c = table.require_column(name);
    idx.push_back(c);
    schema.push_back(table.schema()[c]);
  }
  return DataTable(std::move(schema), table.values().select_cols(idx));
}

SplitResult train_test_split(std::size_t n, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction >= 0.0 && test_fraction <= 1.0)) {
    throw Error(ErrorKind::BadParams, "test_fraction must lie in [0, 1]");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(perm.begin(), perm.end());
  const auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction));

  SplitResult split;
  split.seed = seed;
  split.test_indices.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_test));
  split.train_indices.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_test), perm.end());
  std::sort(split.test_indices.begin(), split.test_indices.end());
  std::sort(split.train_indices.begin(), split.train_indices.end());
  return split;
}

CorrelationMatrix pearson_correlation(const DataTable& table) {
  const std::size_t n = table.n_rows();
  const std::size_t p = table.n_cols();
  if (n < 2) throw Error(ErrorKind::InsufficientRows, "correlation needs at least 2 rows");
  const auto& x = table.values();

  std::vector<double> mean(p, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < p; ++c) mean[c] += x(r, c);
  }
  for (auto& m : mean) m /= static_cast<double>(n);

  Matrix cov(p, p);
  std::vector<double> centered(p);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < p; ++c) centered[c] = x(r, c) - mean[c];
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i; j < p; ++j) cov(i, j) += centered[i] * centered[j];
    }
  }

  CorrelationMatrix out;
  out.labels = table.column_names();
  out.values = Matrix(p, p);
  out.undefined_mask.assign(p * p, 0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      const double denom = std::sqrt(cov(i, i) * cov(j, j));
      double v = 0.0;
      bool undefined = !(denom > 0.0);
      if (!undefined) v = i == j ? 1.0 : std::clamp(cov(i, j) / denom, -1.0, 1.0);
      out.values(i, j) = out.values(j, i) = v;
      out.undefined_mask[i * p + j] = out.undefined_mask[j * p + i] = undefined ? 1 : 0;
    }
  }
  return out;
}

HistogramTable income_histogram(const DataTable& table) {
  const auto col = table.require_column(kIncomeColumn);
  HistogramTable hist;
  for (int code = 1; code <= 8; ++code) hist.categories.push_back(code);
  hist.counts.assign(8, 0);
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    const auto code = std::llround(table.values()(r, col));
    if (code >= 1 && code <= 8) ++hist.counts[static_cast<std::size_t>(code - 1)];
  }
  return hist;
}

}  // namespace diabpred
