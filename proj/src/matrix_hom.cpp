#include "resolvent/matrix_hom.hpp"

#include <algorithm>
#include <map>

#include "resolvent/error.hpp"

namespace resolvent {

namespace {

constexpr std::size_t kMaxMinor = 6;

using Mask = std::uint32_t;
using MinorMap = std::map<std::pair<Mask, Mask>, Poly>;

std::vector<Mask> subsets(std::size_t n, std::size_t k) {
  std::vector<Mask> out;
  for (Mask m = 0; m < (Mask(1) << n); ++m)
    if (static_cast<std::size_t>(__builtin_popcount(m)) == k) out.push_back(m);
  return out;
}

/// Minors of size 1..k built bottom-up by expansion along the first row.
class MinorTable {
 public:
  MinorTable(const PolyMatrix& m, const ChartPtr& chart) : m_(m), chart_(chart) {
    if (m.rows() > 31 || m.cols() > 31)
      throw Error(ErrorCode::MinorSizeExceeded, "matrix too large for minor enumeration");
  }

  /// Minors of size k, keyed by (row mask, column mask); zeros omitted.
  const MinorMap& of_size(std::size_t k) {
    while (levels_.size() <= k) extend();
    return levels_[k];
  }

 private:
  void extend() {
    const std::size_t k = levels_.size();
    MinorMap level;
    if (k == 0) {
      level.emplace(std::make_pair(Mask(0), Mask(0)), Poly::constant(m_.ring(), 1));
      levels_.push_back(std::move(level));
      return;
    }
    const MinorMap& prev = levels_[k - 1];
    for (Mask rows : subsets(m_.rows(), k)) {
      const std::size_t r0 = static_cast<std::size_t>(__builtin_ctz(rows));
      const Mask rest = rows & ~(Mask(1) << r0);
      for (Mask cols : subsets(m_.cols(), k)) {
        Poly sum(m_.ring());
        int sign = 1;
        for (std::size_t c = 0; c < m_.cols(); ++c) {
          if (!(cols & (Mask(1) << c))) continue;
          const Poly& a = m_(r0, c);
          if (!a.is_zero()) {
            auto it = prev.find({rest, cols & ~(Mask(1) << c)});
            if (it != prev.end()) {
              if (sign > 0) sum += a * it->second;
              else sum -= a * it->second;
            }
          }
          sign = -sign;
        }
        if (chart_) sum = chart_->reduce(sum);
        if (!sum.is_zero()) level.emplace(std::make_pair(rows, cols), std::move(sum));
      }
    }
    levels_.push_back(std::move(level));
  }

  const PolyMatrix& m_;
  ChartPtr chart_;
  std::vector<MinorMap> levels_;
};

}  // namespace

PolyMatrix::PolyMatrix(const RingPtr& ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, Poly(ring)) {}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Poly> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols)
    throw Error(ErrorCode::InvalidArgument, "matrix entry count does not match its shape");
  for (const auto& e : data_)
    if (e.ring()) {
      ring_ = e.ring();
      break;
    }
  for (auto& e : data_) {
    if (!e.ring()) e = Poly(ring_);
    else if (e.nvars() != ring_->nvars())
      throw Error(ErrorCode::ContextMismatch, "matrix entries from different rings");
  }
}

PolyMatrix PolyMatrix::identity(const RingPtr& ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(ring, 1);
  return m;
}

PolyMatrix PolyMatrix::transposed() const {
  PolyMatrix t(ring_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

PolyMatrix PolyMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  PolyMatrix b(ring_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void PolyMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void PolyMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void PolyMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Poly& f) {
  if (f.is_zero()) return;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!(*this)(src, c).is_zero()) (*this)(dst, c) += f * (*this)(src, c);
}

void PolyMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Poly& f) {
  if (f.is_zero()) return;
  for (std::size_t r = 0; r < rows_; ++r)
    if (!(*this)(r, src).is_zero()) (*this)(r, dst) += f * (*this)(r, src);
}

void PolyMatrix::scale_row(std::size_t r, const Poly& f) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = f * (*this)(r, c);
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Poly& p) { return p.is_zero(); });
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    if (!(a.data_[i] == b.data_[i])) return false;
  return true;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "matrix shapes do not compose");
  RingPtr ring = a.ring() ? a.ring() : b.ring();
  PolyMatrix out(ring, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Poly& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
    }
  return out;
}

PolyMatrix reduce(const ChartPtr& chart, const PolyMatrix& m) {
  PolyMatrix out(chart->ring(), m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = chart->reduce(m(r, c));
  return out;
}

PolyMatrix map_matrix(const RingMap& m, const PolyMatrix& a) {
  PolyMatrix out(m.target()->ring(), a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = apply_map(m, a(r, c));
  return out;
}

Poly determinant(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  if (n > 20) throw Error(ErrorCode::MinorSizeExceeded, "determinant too large");
  // level[mask] = minor on the last popcount(mask) rows and the columns in mask
  std::map<Mask, Poly> level{{Mask(0), Poly::constant(m.ring(), 1)}};
  for (std::size_t row = n; row-- > 0;) {
    std::map<Mask, Poly> next;
    for (const auto& [mask, minor] : level) {
      int sign = 1;
      for (std::size_t c = 0; c < n; ++c) {
        if (mask & (Mask(1) << c)) {
          sign = -sign;
          continue;
        }
        if (m(row, c).is_zero()) continue;
        Poly term = m(row, c) * minor;
        // sign counts the columns of mask to the left of c
        auto [it, inserted] = next.try_emplace(mask | (Mask(1) << c), Poly(m.ring()));
        if (sign > 0) it->second += term;
        else it->second -= term;
      }
    }
    level = std::move(next);
  }
  auto it = level.find((Mask(1) << n) - 1);
  return it == level.end() ? Poly(m.ring()) : it->second;
}

MatrixHom::MatrixHom(ChartPtr chart, PolyMatrix entries) : chart_(std::move(chart)) {
  for (const auto& e : entries.entries())
    if (e.ring() && e.nvars() != chart_->nvars())
      throw Error(ErrorCode::ContextMismatch, "matrix entry outside the chart ring");
  m_ = reduce(chart_, entries);
}

MatrixHom::MatrixHom(ChartPtr chart, std::size_t rows, std::size_t cols,
                     const std::vector<std::string>& entries)
    : chart_(std::move(chart)) {
  if (entries.size() != rows * cols)
    throw Error(ErrorCode::InvalidArgument, "matrix entry count does not match its shape");
  m_ = PolyMatrix(chart_->ring(), rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m_(r, c) = chart_->parse(entries[r * cols + c]);
}

MatrixHom MatrixHom::zero(const ChartPtr& chart, std::size_t rows, std::size_t cols) {
  return MatrixHom(chart, PolyMatrix(chart->ring(), rows, cols));
}

MatrixHom MatrixHom::identity(const ChartPtr& chart, std::size_t n) {
  return MatrixHom(chart, PolyMatrix::identity(chart->ring(), n));
}

std::string MatrixHom::to_string() const {
  std::string out = "[";
  for (std::size_t r = 0; r < rows(); ++r) {
    out += r ? ", [" : "[";
    for (std::size_t c = 0; c < cols(); ++c) {
      if (c) out += ", ";
      out += m_(r, c).to_string();
    }
    out += "]";
  }
  return out + "]";
}

std::vector<Poly> minors(const MatrixHom& phi, std::size_t k) {
  if (k == 0) return {phi.chart()->constant(1)};
  if (k > std::min(phi.rows(), phi.cols())) return {};
  if (k > kMaxMinor)
    throw Error(ErrorCode::MinorSizeExceeded,
                std::to_string(k) + "x" + std::to_string(k) + " minors exceed the supported size");
  MinorTable table(phi.matrix(), phi.chart());
  std::vector<std::pair<std::string, Poly>> keyed;
  for (const auto& [key, p] : table.of_size(k)) {
    Poly mp = p.monic();
    keyed.emplace_back(mp.to_string(), std::move(mp));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Poly> out;
  for (std::size_t i = 0; i < keyed.size(); ++i)
    if (i == 0 || keyed[i].first != keyed[i - 1].first) out.push_back(std::move(keyed[i].second));
  return out;
}

Ideal determinantal_ideal(const MatrixHom& phi, std::size_t r) {
  std::vector<Poly> gens = minors(phi, r + 1);
  for (const auto& rel : phi.chart()->relations().generators()) gens.push_back(rel);
  return Ideal(phi.chart()->ring(), std::move(gens));
}

std::size_t image_rank(const MatrixHom& phi) {
  const std::size_t top = std::min(phi.rows(), phi.cols());
  MinorTable table(phi.matrix(), phi.chart());
  std::size_t r = 0;
  while (r < top) {
    if (r + 1 > kMaxMinor)
      throw Error(ErrorCode::MinorSizeExceeded, "rank exceeds the supported minor size");
    if (table.of_size(r + 1).empty()) break;
    ++r;
  }
  return r;
}

std::size_t rank_at(const MatrixHom& phi, const std::vector<Rational>& point) {
  if (point.size() != phi.chart()->nvars())
    throw Error(ErrorCode::PointOffChart, "point has the wrong number of coordinates");
  for (const auto& rel : phi.chart()->relations().generators())
    if (rel.evaluate(point) != 0)
      throw Error(ErrorCode::PointOffChart, "point does not satisfy " + rel.to_string());
  const std::size_t q = phi.rows(), p = phi.cols();
  std::vector<std::vector<Rational>> a(q, std::vector<Rational>(p));
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t c = 0; c < p; ++c) a[r][c] = phi(r, c).evaluate(point);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < p && rank < q; ++c) {
    std::size_t piv = rank;
    while (piv < q && a[piv][c] == 0) ++piv;
    if (piv == q) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < q; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < p; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

bool is_regular_point(const MatrixHom& phi, const std::vector<Rational>& point) {
  return rank_at(phi, point) == image_rank(phi);
}

MatrixHom pullback_hom(const RingMap& m, const MatrixHom& phi) {
  if (!phi.chart()->same_ring_as(*m.source()))
    throw Error(ErrorCode::ChartMismatch, "matrix does not live on the source of the map");
  return MatrixHom(m.target(), map_matrix(m, phi.matrix()));
}

MatrixHom direct_sum(const MatrixHom& a, const MatrixHom& b) {
  if (!a.chart()->same_ring_as(*b.chart()))
    throw Error(ErrorCode::ChartMismatch, "direct sum of matrices on different charts");
  PolyMatrix m(a.chart()->ring(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
  return MatrixHom(a.chart(), std::move(m));
}

MatrixHom compose(const MatrixHom& outer, const MatrixHom& inner) {
  if (!outer.chart()->same_ring_as(*inner.chart()))
    throw Error(ErrorCode::ChartMismatch, "composition of matrices on different charts");
  return MatrixHom(outer.chart(), outer.matrix() * inner.matrix());
}

bool base_change_check(const RingMap& m, const MatrixHom& phi, std::size_t r) {
  return ideal_equal(determinantal_ideal(pullback_hom(m, phi), r),
                     pull_ideal(m, determinantal_ideal(phi, r)));
}

ComplexOnChart::ComplexOnChart(std::vector<MatrixHom> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "complex needs at least one map");
  for (std::size_t i = 0; i + 1 < terms_.size(); ++i) {
    const auto& a = terms_[i];
    const auto& b = terms_[i + 1];
    if (!a.chart()->same_ring_as(*b.chart()))
      throw Error(ErrorCode::ChartMismatch, "complex maps on different charts");
    if (b.cols() != a.rows())
      throw Error(ErrorCode::InvalidArgument,
                  "map " + std::to_string(i + 1) + " does not start where map " + std::to_string(i) +
                      " ends");
    if (!compose(b, a).matrix().is_zero())
      throw Error(ErrorCode::InvalidArgument,
                  "maps " + std::to_string(i) + " and " + std::to_string(i + 1) + " do not compose to zero");
  }
}

std::size_t ComplexOnChart::rank(std::size_t i) const {
  if (i < terms_.size()) return terms_[i].cols();
  return terms_.back().rows();
}

ComplexOnChart pullback_complex(const RingMap& m, const ComplexOnChart& c) {
  std::vector<MatrixHom> terms;
  for (const auto& t : c.terms()) terms.push_back(pullback_hom(m, t));
  return ComplexOnChart(std::move(terms));
}

}  // namespace resolvent
