#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace limitfem {

/// Compressed sparse row matrix with sorted column indices. The
/// sparsity pattern is fixed at construction; entries outside it
/// cannot be added.
class CompressedMatrix {
 public:
  CompressedMatrix() = default;

  /// Builds a zero matrix from per-row column lists (duplicates allowed,
  /// any order).
  CompressedMatrix(std::size_t n, std::vector<std::vector<std::size_t>> pattern);

  static CompressedMatrix identity(std::size_t n);
  static CompressedMatrix from_dense(const std::vector<std::vector<double>>& dense);

  std::size_t size() const { return n_; }
  std::size_t nonzeros() const { return cols_.size(); }

  std::span<const std::size_t> row_offsets() const { return offsets_; }
  std::span<const std::size_t> column_indices() const { return cols_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Position of (row, col) in the value array, or npos when not stored.
  std::size_t find(std::size_t row, std::size_t col) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  double at(std::size_t row, std::size_t col) const;
  /// Accumulates into a stored entry; throws std::out_of_range otherwise.
  void add(std::size_t row, std::size_t col, double value);
  void set_zero();

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  /// Largest |A_ij - A_ji| over stored entries.
  double asymmetry() const;
  double diagonal(std::size_t row) const { return at(row, row); }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace limitfem
