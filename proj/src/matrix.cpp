#include "diabpred/matrix.hpp"

#include <algorithm>

#include "diabpred/error.hpp"

namespace diabpred {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix data length " + std::to_string(data_.size()) +
                    " does not match " + std::to_string(rows_) + "x" +
                    std::to_string(cols_));
  }
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = data_[r * cols_ + c];
  return out;
}

void Matrix::append_row(std::span<const double> values) {
  if (values.size() != cols_) {
    throw Error(ErrorKind::DimensionMismatch, "appended row has wrong width");
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix out;
  out.cols_ = cols_;
  out.rows_ = indices.size();
  out.data_.resize(indices.size() * cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    auto src = row(indices[i]);
    std::copy(src.begin(), src.end(), out.data_.begin() + i * cols_);
  }
  return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> indices) const {
  Matrix out(rows_, indices.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < indices.size(); ++j) {
      out(r, j) = (*this)(r, indices[j]);
    }
  }
  return out;
}

std::size_t LabelVector::positive_count() const noexcept {
  return static_cast<std::size_t>(std::count(values.begin(), values.end(), 1));
}

bool LabelVector::has_both_classes() const noexcept {
  const auto pos = positive_count();
  return pos > 0 && pos < values.size();
}

LabelVector LabelVector::select(std::span<const std::size_t> indices) const {
  LabelVector out;
  out.values.reserve(indices.size());
  for (auto i : indices) out.values.push_back(values[i]);
  return out;
}

void check_binary(std::span<const int> labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw Error(ErrorKind::NonBinary,
                  "label " + std::to_string(labels[i]) + " at index " +
                      std::to_string(i) + " is not 0 or 1");
    }
  }
}

}  // namespace diabpred
