#include <algorithm>
#include <random>

#include "resolvent/diagonalizer.hpp"
#include "resolvent/error.hpp"

namespace resolvent {

namespace {

struct Mat2 {
  Poly a, b, c, d;  // [[a, b], [c, d]]

  /// Inverse of a matrix with determinant one.
  Mat2 unimodular_inverse() const { return {d, -b, -c, a}; }
};

/// Rows x and y replaced by E * (row x; row y).
void combine_rows(PolyMatrix& m, std::size_t x, std::size_t y, const Mat2& e) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Poly u = m(x, c), v = m(y, c);
    m(x, c) = e.a * u + e.b * v;
    m(y, c) = e.c * u + e.d * v;
  }
}

/// Columns x and y replaced by (col x, col y) * E.
void combine_cols(PolyMatrix& m, std::size_t x, std::size_t y, const Mat2& e) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Poly u = m(r, x), v = m(r, y);
    m(r, x) = u * e.a + v * e.c;
    m(r, y) = u * e.b + v * e.d;
  }
}

bool canonical_less(const Poly& a, const Poly& b) {
  const bool ca = a.is_constant(), cb = b.is_constant();
  if (ca != cb) return ca;
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  if (a.size() != b.size()) return a.size() < b.size();
  return a.to_string() < b.to_string();
}

}  // namespace

StageReducer::StageReducer(const MatrixHom& phi, const ReduceOptions& options)
    : chart_(phi.chart()), options_(options), q_(phi.rows()), p_(phi.cols()) {
  const auto& ring = chart_->ring();
  U_ = U_inv_ = PolyMatrix::identity(ring, q_);
  V_ = V_inv_ = PolyMatrix::identity(ring, p_);
  last_ = Poly::constant(ring, 1);
  block_ = phi.matrix();
}

std::vector<std::pair<std::size_t, std::size_t>> StageReducer::nonzero_positions() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < block_.rows(); ++i)
    for (std::size_t k = 0; k < block_.cols(); ++k)
      if (!block_(i, k).is_zero()) out.emplace_back(i, k);
  return out;
}

void StageReducer::row_add(std::size_t dst, std::size_t src, const Poly& f) {
  block_.add_row_multiple(dst, src, f);
  for (std::size_t k = 0; k < block_.cols(); ++k) block_(dst, k) = chart_->reduce(block_(dst, k));
  U_.add_row_multiple(r_ + dst, r_ + src, f);
  U_inv_.add_col_multiple(r_ + src, r_ + dst, -f);
}

void StageReducer::col_add(std::size_t dst, std::size_t src, const Poly& f) {
  block_.add_col_multiple(dst, src, f);
  for (std::size_t i = 0; i < block_.rows(); ++i) block_(i, dst) = chart_->reduce(block_(i, dst));
  V_.add_col_multiple(r_ + dst, r_ + src, f);
  V_inv_.add_row_multiple(r_ + src, r_ + dst, -f);
}

void StageReducer::row_swap(std::size_t a, std::size_t b) {
  block_.swap_rows(a, b);
  U_.swap_rows(r_ + a, r_ + b);
  U_inv_.swap_cols(r_ + a, r_ + b);
}

void StageReducer::col_swap(std::size_t a, std::size_t b) {
  block_.swap_cols(a, b);
  V_.swap_cols(r_ + a, r_ + b);
  V_inv_.swap_rows(r_ + a, r_ + b);
}

void StageReducer::pivot_at(std::size_t i, std::size_t k, std::vector<Poly> quotients) {
  const std::size_t nr = block_.rows(), nc = block_.cols();
  PolyMatrix quot(nr, nc, std::move(quotients));
  row_swap(0, i);
  quot.swap_rows(0, i);
  col_swap(0, k);
  quot.swap_cols(0, k);
  const Poly pivot = block_(0, 0);
  diag_.push_back(chart_->reduce(last_ * pivot));
  for (std::size_t j = 1; j < nr; ++j) {
    const Poly f = quot(j, 0);
    if (f.is_zero()) continue;
    U_.add_row_multiple(r_ + j, r_, -f);
    U_inv_.add_col_multiple(r_, r_ + j, f);
  }
  for (std::size_t l = 1; l < nc; ++l) {
    const Poly f = quot(0, l);
    if (f.is_zero()) continue;
    V_.add_col_multiple(r_ + l, r_, -f);
    V_inv_.add_row_multiple(r_, r_ + l, f);
  }
  PolyMatrix next(chart_->ring(), nr - 1, nc - 1);
  for (std::size_t j = 1; j < nr; ++j)
    for (std::size_t l = 1; l < nc; ++l)
      next(j - 1, l - 1) = chart_->reduce(quot(j, l) - quot(j, 0) * quot(0, l));
  block_ = std::move(next);
  last_ = diag_.back();
  ++r_;
}

bool StageReducer::try_pivot() {
  auto positions = nonzero_positions();
  std::stable_sort(positions.begin(), positions.end(), [&](const auto& x, const auto& y) {
    return canonical_less(block_(x.first, x.second), block_(y.first, y.second));
  });
  const auto ring = chart_->ring();
  for (const auto& [i, k] : positions) {
    ModularDivisor by(block_(i, k), chart_->relations());
    std::vector<Poly> quotients(block_.rows() * block_.cols(), Poly(ring));
    bool ok = true;
    for (const auto& [j, l] : positions) {
      if (j == i && l == k) {
        quotients[j * block_.cols() + l] = Poly::constant(ring, 1);
        continue;
      }
      auto q = by.divide(block_(j, l));
      if (!q) {
        ok = false;
        break;
      }
      quotients[j * block_.cols() + l] = std::move(*q);
    }
    if (ok) {
      pivot_at(i, k, std::move(quotients));
      return true;
    }
  }
  return false;
}

bool StageReducer::try_pair_step() {
  const auto& rel = chart_->relations();
  const auto ring = chart_->ring();
  auto attempt = [&](const Poly& a, const Poly& b) -> std::optional<Mat2> {
    std::optional<Poly> g;
    try {
      g = is_principal(Ideal(ring, {a, b}), rel);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UndecidedPrincipality) throw;
      return std::nullopt;
    }
    if (!g || g->is_zero()) return std::nullopt;
    ModularDivisor by(*g, rel);
    auto a1 = by.divide(a), b1 = by.divide(b);
    if (!a1 || !b1) return std::nullopt;
    if (chart_->is_unit(*a1) || chart_->is_unit(*b1)) return std::nullopt;
    std::vector<Poly> gens{a, b};
    for (const auto& r : rel.generators()) gens.push_back(r);
    auto cert = member(*g, Ideal(ring, gens));
    if (!cert) return std::nullopt;
    Poly u = chart_->reduce(cert->cofactors[0]), v = chart_->reduce(cert->cofactors[1]);
    if (!chart_->reduce(u * *a1 + v * *b1 - Poly::constant(ring, 1)).is_zero()) return std::nullopt;
    return Mat2{u, v, -*b1, *a1};
  };
  const std::size_t nr = block_.rows(), nc = block_.cols();
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t k1 = 0; k1 < nc; ++k1)
      for (std::size_t k2 = k1 + 1; k2 < nc; ++k2) {
        const Poly& a = block_(i, k1);
        const Poly& b = block_(i, k2);
        if (a.is_zero() || b.is_zero()) continue;
        auto e = attempt(a, b);
        if (!e) continue;
        // (a b) * [[u, -b'], [v, a']] = (g 0)
        Mat2 cols{e->a, e->c, e->b, e->d};
        combine_cols(block_, k1, k2, cols);
        for (std::size_t j = 0; j < nr; ++j) {
          block_(j, k1) = chart_->reduce(block_(j, k1));
          block_(j, k2) = chart_->reduce(block_(j, k2));
        }
        combine_cols(V_, r_ + k1, r_ + k2, cols);
        Mat2 inv = cols.unimodular_inverse();
        combine_rows(V_inv_, r_ + k1, r_ + k2, inv);
        return true;
      }
  for (std::size_t k = 0; k < nc; ++k)
    for (std::size_t i1 = 0; i1 < nr; ++i1)
      for (std::size_t i2 = i1 + 1; i2 < nr; ++i2) {
        const Poly& a = block_(i1, k);
        const Poly& b = block_(i2, k);
        if (a.is_zero() || b.is_zero()) continue;
        auto e = attempt(a, b);
        if (!e) continue;
        // [[u, v], [-b', a']] * (a; b) = (g; 0)
        combine_rows(block_, i1, i2, *e);
        for (std::size_t l = 0; l < nc; ++l) {
          block_(i1, l) = chart_->reduce(block_(i1, l));
          block_(i2, l) = chart_->reduce(block_(i2, l));
        }
        combine_rows(U_, r_ + i1, r_ + i2, *e);
        combine_cols(U_inv_, r_ + i1, r_ + i2, e->unimodular_inverse());
        return true;
      }
  return false;
}

void StageReducer::mix(std::uint64_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(options_.seed), static_cast<std::uint32_t>(options_.seed >> 32),
                    static_cast<std::uint32_t>(r_), static_cast<std::uint32_t>(attempt)};
  std::mt19937 rng(seq);
  auto coeff = [&] { return static_cast<int>(rng() % 3) + 1; };
  const auto ring = chart_->ring();
  if (block_.rows() > 1) {
    std::size_t j = 1 + rng() % (block_.rows() - 1);
    row_add(0, j, Poly::constant(ring, coeff()));
  }
  if (block_.cols() > 1) {
    std::size_t l = 1 + rng() % (block_.cols() - 1);
    col_add(0, l, Poly::constant(ring, coeff()));
  }
}

bool StageReducer::try_stage() {
  if (try_pivot()) return true;
  const std::size_t max_pair_steps = 4 * nonzero_positions().size();
  for (std::size_t s = 0; s < max_pair_steps; ++s) {
    if (!try_pair_step()) return false;
    if (try_pivot()) return true;
  }
  return false;
}

StageReducer::Outcome StageReducer::run() {
  while (true) {
    Outcome out;
    out.stage = r_;
    if (nonzero_positions().empty()) {
      out.finished = true;
      return out;
    }
    if (try_stage()) continue;

    std::vector<Poly> entries;
    for (const auto& [i, k] : nonzero_positions()) entries.push_back(block_(i, k));
    std::optional<Poly> principal;
    bool undecided = false;
    try {
      principal = chart_->principal_generator(entries);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UndecidedPrincipality) throw;
      undecided = true;
    }
    bool progressed = false;
    if (principal) {
      for (int t = 0; t < options_.mixing_tries && !progressed; ++t) {
        mix(static_cast<std::uint64_t>(t));
        progressed = try_stage();
      }
    }
    if (progressed) continue;
    out.why = undecided ? Stuck::Undecided : principal ? Stuck::NoUnitPivot : Stuck::NotPrincipal;
    for (const auto& [i, k] : nonzero_positions()) out.center.push_back(block_(i, k));
    return out;
  }
}

StageReducer StageReducer::pulled_back(const RingMap& m) const {
  if (!m.source()->same_ring_as(*chart_))
    throw Error(ErrorCode::ChartMismatch, "reduction state pulled back along a foreign map");
  StageReducer s;
  s.chart_ = m.target();
  s.options_ = options_;
  s.q_ = q_;
  s.p_ = p_;
  s.r_ = r_;
  s.U_ = map_matrix(m, U_);
  s.U_inv_ = map_matrix(m, U_inv_);
  s.V_ = map_matrix(m, V_);
  s.V_inv_ = map_matrix(m, V_inv_);
  for (const auto& d : diag_) s.diag_.push_back(apply_map(m, d));
  s.last_ = apply_map(m, last_);
  s.block_ = map_matrix(m, block_);
  return s;
}

DiagCert StageReducer::certificate() const {
  DiagCert c;
  c.chart = chart_;
  c.U = reduce(chart_, U_);
  c.V = reduce(chart_, V_);
  c.V_inverse = reduce(chart_, V_inv_);
  c.diag = diag_;
  c.U_det = chart_->reduce(determinant(c.U));
  c.V_det = chart_->reduce(determinant(c.V));
  return c;
}

}  // namespace resolvent
