#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resolvent/chart.hpp"

namespace resolvent {

/// Dense row-major matrix of polynomials over one ring.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(const RingPtr& ring, std::size_t rows, std::size_t cols);
  PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Poly> entries);

  static PolyMatrix identity(const RingPtr& ring, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const RingPtr& ring() const { return ring_; }

  Poly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Poly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<Poly>& entries() const { return data_; }

  PolyMatrix transposed() const;
  PolyMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += f * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Poly& f);
  /// col[dst] += f * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Poly& f);
  void scale_row(std::size_t r, const Poly& f);

  bool is_zero() const;
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

 private:
  RingPtr ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> data_;
};

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);

/// Entrywise normal form modulo the chart relations.
PolyMatrix reduce(const ChartPtr& chart, const PolyMatrix& m);
PolyMatrix map_matrix(const RingMap& m, const PolyMatrix& a);

/// Determinant by expansion over column subsets (memoized); square matrices only.
Poly determinant(const PolyMatrix& m);

/// phi: E -> F with E of rank cols() = p and F of rank rows() = q. Entry (j, i)
/// is the j-th coordinate of the image of the i-th basis vector of E.
class MatrixHom {
 public:
  MatrixHom() = default;
  MatrixHom(ChartPtr chart, PolyMatrix entries);
  MatrixHom(ChartPtr chart, std::size_t rows, std::size_t cols, const std::vector<std::string>& entries);

  static MatrixHom zero(const ChartPtr& chart, std::size_t rows, std::size_t cols);
  static MatrixHom identity(const ChartPtr& chart, std::size_t n);

  const ChartPtr& chart() const { return chart_; }
  std::size_t rows() const { return m_.rows(); }
  std::size_t cols() const { return m_.cols(); }
  const Poly& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  const PolyMatrix& matrix() const { return m_; }

  std::string to_string() const;

 private:
  ChartPtr chart_;
  PolyMatrix m_;
};

/// Nonzero k x k minors, reduced, deduplicated and sorted by serialization.
/// Throws MinorSizeExceeded for k > 6.
std::vector<Poly> minors(const MatrixHom& phi, std::size_t k);

/// (r+1)-minors plus the chart relations.
Ideal determinantal_ideal(const MatrixHom& phi, std::size_t r);

/// Largest r such that some r-minor is nonzero on the chart.
std::size_t image_rank(const MatrixHom& phi);

/// Rank of the matrix evaluated at a rational point of the chart.
std::size_t rank_at(const MatrixHom& phi, const std::vector<Rational>& point);
bool is_regular_point(const MatrixHom& phi, const std::vector<Rational>& point);

MatrixHom pullback_hom(const RingMap& m, const MatrixHom& phi);
MatrixHom direct_sum(const MatrixHom& a, const MatrixHom& b);
MatrixHom compose(const MatrixHom& outer, const MatrixHom& inner);
bool base_change_check(const RingMap& m, const MatrixHom& phi, std::size_t r);

/// psi_0: F_0 -> F_1, ..., psi_{n-1}: F_{n-1} -> F_n over one chart.
class ComplexOnChart {
 public:
  ComplexOnChart() = default;
  explicit ComplexOnChart(std::vector<MatrixHom> terms);

  const ChartPtr& chart() const { return terms_.front().chart(); }
  const std::vector<MatrixHom>& terms() const { return terms_; }
  std::size_t length() const { return terms_.size(); }
  /// rank of F_i, i = 0..n
  std::size_t rank(std::size_t i) const;

 private:
  std::vector<MatrixHom> terms_;
};

ComplexOnChart pullback_complex(const RingMap& m, const ComplexOnChart& c);

}  // namespace resolvent
