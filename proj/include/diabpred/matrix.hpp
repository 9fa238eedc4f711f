#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace diabpred {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  std::vector<double> column(std::size_t c) const;

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  void append_row(std::span<const double> values);
  void reserve_rows(std::size_t rows) { data_.reserve(rows * cols_); }

  Matrix select_rows(std::span<const std::size_t> indices) const;
  Matrix select_cols(std::span<const std::size_t> indices) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Binary class labels (0 = negative, 1 = positive).
struct LabelVector {
  std::vector<int> values;

  LabelVector() = default;
  explicit LabelVector(std::vector<int> v) : values(std::move(v)) {}

  std::size_t size() const noexcept { return values.size(); }
  std::size_t positive_count() const noexcept;
  std::size_t negative_count() const noexcept { return values.size() - positive_count(); }
  bool has_both_classes() const noexcept;

  LabelVector select(std::span<const std::size_t> indices) const;

  friend bool operator==(const LabelVector&, const LabelVector&) = default;
};

// Throws NonBinary if any label is outside {0,1}.
void check_binary(std::span<const int> labels);

}  // namespace diabpred
