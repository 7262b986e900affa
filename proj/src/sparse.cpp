#include "limitfem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace limitfem {

CompressedMatrix::CompressedMatrix(std::size_t n, std::vector<std::vector<std::size_t>> pattern)
    : n_(n) {
  if (pattern.size() != n) throw std::invalid_argument("pattern row count does not match size");
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = pattern[i];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    if (!row.empty() && row.back() >= n) {
      throw std::out_of_range("column " + std::to_string(row.back()) + " out of range");
    }
    offsets_[i + 1] = offsets_[i] + row.size();
  }
  cols_.reserve(offsets_[n]);
  for (const auto& row : pattern) cols_.insert(cols_.end(), row.begin(), row.end());
  values_.assign(cols_.size(), 0.0);
}

CompressedMatrix CompressedMatrix::identity(std::size_t n) {
  std::vector<std::vector<std::size_t>> pattern(n);
  for (std::size_t i = 0; i < n; ++i) pattern[i] = {i};
  CompressedMatrix m(n, std::move(pattern));
  std::fill(m.values_.begin(), m.values_.end(), 1.0);
  return m;
}

CompressedMatrix CompressedMatrix::from_dense(const std::vector<std::vector<double>>& dense) {
  const std::size_t n = dense.size();
  std::vector<std::vector<std::size_t>> pattern(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dense[i].size() != n) throw std::invalid_argument("dense matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (dense[i][j] != 0.0 || dense[j][i] != 0.0 || i == j) pattern[i].push_back(j);
    }
  }
  CompressedMatrix m(n, std::move(pattern));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = m.offsets_[i]; k < m.offsets_[i + 1]; ++k) m.values_[k] = dense[i][m.cols_[k]];
  }
  return m;
}

std::size_t CompressedMatrix::find(std::size_t row, std::size_t col) const {
  if (row >= n_) return npos;
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(offsets_[row]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(offsets_[row + 1]);
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return npos;
  return static_cast<std::size_t>(it - cols_.begin());
}

double CompressedMatrix::at(std::size_t row, std::size_t col) const {
  const std::size_t k = find(row, col);
  return k == npos ? 0.0 : values_[k];
}

void CompressedMatrix::add(std::size_t row, std::size_t col, double value) {
  const std::size_t k = find(row, col);
  if (k == npos) {
    throw std::out_of_range("entry (" + std::to_string(row) + ", " + std::to_string(col) +
                            ") is outside the sparsity pattern");
  }
  values_[k] += value;
}

void CompressedMatrix::set_zero() { std::fill(values_.begin(), values_.end(), 0.0); }

void CompressedMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) s += values_[k] * x[cols_[k]];
    y[i] = s;
  }
}

std::vector<double> CompressedMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_);
  multiply(x, y);
  return y;
}

double CompressedMatrix::asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      worst = std::max(worst, std::abs(values_[k] - at(cols_[k], i)));
    }
  }
  return worst;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace limitfem
