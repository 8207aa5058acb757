#include "resolvent/resolver.hpp"

#include <map>

#include "resolvent/error.hpp"

namespace resolvent {

Ideal fitting_ideal(const Presentation& p, std::size_t h) {
  const auto& alpha = p.alpha;
  const std::size_t m = alpha.rows();
  if (h >= m) return Ideal::unit(alpha.chart()->ring());
  return determinantal_ideal(alpha, m - h - 1);
}

bool fitting_independence_check(const Presentation& p, const Presentation& q) {
  if (!p.alpha.chart()->same_ring_as(*q.alpha.chart()))
    throw Error(ErrorCode::ChartMismatch, "presentations live on different charts");
  const std::size_t top = std::max(p.alpha.rows(), q.alpha.rows());
  for (std::size_t h = 0; h <= top; ++h)
    if (!ideal_equal(fitting_ideal(p, h), fitting_ideal(q, h))) return false;
  return true;
}

namespace {

DiagCert settle(DiagCert c) {
  const auto& chart = c.chart;
  c.U = reduce(chart, c.U);
  c.V = reduce(chart, c.V);
  c.V_inverse = reduce(chart, c.V_inverse);
  for (auto& d : c.diag) d = chart->reduce(d);
  c.U_det = chart->reduce(c.U_det);
  c.V_det = chart->reduce(c.V_det);
  return c;
}

/// The residual map of psi_j into the kernel of psi_{j+1}, in the basis given
/// by the trailing columns of the upper certificate's V.
PolyMatrix into_kernel(const DiagCert& upper, const MatrixHom& psi) {
  const auto& chart = psi.chart();
  const std::size_t m = upper.rank();
  PolyMatrix w = reduce(chart, upper.V_inverse * psi.matrix());
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < w.cols(); ++c)
      if (!w(r, c).is_zero())
        throw Error(ErrorCode::Verification,
                    "image of a map leaves the kernel of the next one on chart " + chart->name());
  return w.block(m, 0, w.rows() - m, w.cols());
}

/// U = Pi * diag(I_m, U_A) * V_upper^{-1}, where Pi moves the kernel rows to the top.
DiagCert lift(const DiagCert& inner, const DiagCert& upper, std::size_t rows) {
  const auto& chart = inner.chart;
  const auto& ring = chart->ring();
  const std::size_t m = upper.rank();
  const std::size_t k = rows - m;
  PolyMatrix block = PolyMatrix::identity(ring, rows);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) block(m + r, m + c) = inner.U(r, c);
  PolyMatrix pi(ring, rows, rows);
  for (std::size_t r = 0; r < k; ++r) pi(r, m + r) = chart->constant(1);
  for (std::size_t r = 0; r < m; ++r) pi(k + r, r) = chart->constant(1);
  DiagCert out = inner;
  out.U = reduce(chart, pi * block * upper.V_inverse);
  auto v_inv_det = chart->inverse(upper.V_det);
  if (!v_inv_det) throw Error(ErrorCode::Verification, "upper certificate has a non-unit det V");
  Poly det = inner.U_det * *v_inv_det;
  if ((m * k) % 2) det = -det;
  out.U_det = chart->reduce(det);
  return out;
}

std::vector<std::size_t> ranks_from(const ComplexOnChart& c, const std::vector<DiagCert>& certs) {
  const std::size_t n = c.length();
  std::vector<std::size_t> h(n + 1);
  h[0] = c.rank(0) - certs[0].rank();
  for (std::size_t i = 1; i < n; ++i) h[i] = c.rank(i) - certs[i].rank() - certs[i - 1].rank();
  h[n] = c.rank(n) - certs[n - 1].rank();
  return h;
}

}  // namespace

ResolutionResult resolve_complex(const ComplexOnChart& complex, const ResolveOptions& options) {
  const std::size_t n = complex.length();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "complex has no maps");
  ResolutionResult res;
  res.input = complex;
  res.tower = BlowupTower(complex.chart());
  std::map<std::size_t, std::vector<DiagCert>> held;
  held[0] = std::vector<DiagCert>(n);

  for (std::size_t j = n; j-- > 0;) {
    TowerOptions to;
    to.max_depth = options.max_depth;
    to.reduce = options.reduce;
    to.shuffle_seed = options.shuffle_seed;
    to.level = j;
    for (auto leaf : res.tower.leaves()) {
      const std::vector<DiagCert> certs = held.at(leaf);
      const auto& node = res.tower.nodes[leaf];
      MatrixHom psi = pullback_hom(node.from_root, complex.terms()[j]);
      const bool top = j + 1 == n;
      MatrixHom a = top ? psi : MatrixHom(node.chart, into_kernel(certs[j + 1], psi));
      auto grown = grow_tower(res.tower, leaf, a, to);
      for (auto& lc : grown) {
        std::vector<DiagCert> mine;
        if (lc.node == leaf) {
          mine = certs;
        } else {
          RingMap down = res.tower.map_between(leaf, lc.node);
          for (std::size_t i = 0; i < n; ++i)
            mine.push_back(i > j ? settle(pullback_cert(down, certs[i])) : DiagCert{});
        }
        mine[j] = top ? lc.cert : lift(lc.cert, mine[j + 1], psi.rows());
        held[lc.node] = std::move(mine);
      }
      if (!res.tower.nodes[leaf].children.empty()) held.erase(leaf);
    }
  }

  for (auto leaf : res.tower.leaves()) {
    LeafResolution lr;
    lr.node = leaf;
    lr.complex = pullback_complex(res.tower.nodes[leaf].from_root, complex);
    lr.certs = std::move(held.at(leaf));
    lr.kernel = kernel_basis(lr.certs[0], complex.rank(0));
    lr.cohomology = ranks_from(complex, lr.certs);
    if (res.leaves.empty()) {
      res.cohomology = lr.cohomology;
    } else if (lr.cohomology != res.cohomology) {
      throw Error(ErrorCode::Verification,
                  "cohomology ranks differ on chart " + res.tower.nodes[leaf].chart->name());
    }
    res.leaves.push_back(std::move(lr));
  }
  return res;
}

bool torsion_check(const ResolutionResult& r) {
  for (std::size_t i = 1; i < r.cohomology.size(); ++i)
    if (r.cohomology[i] != 0) return false;
  return true;
}

std::string verify_resolution(const ResolutionResult& r) {
  const auto expected = r.tower.leaves();
  if (expected.size() != r.leaves.size()) return "leaf count differs from the tower";
  for (std::size_t l = 0; l < r.leaves.size(); ++l) {
    const auto& leaf = r.leaves[l];
    if (leaf.node != expected[l]) return "leaf order differs from the tower";
    const auto& chart = r.tower.nodes[leaf.node].chart;
    const auto& terms = leaf.complex.terms();
    if (terms.size() != r.input.length() || leaf.certs.size() != terms.size())
      return "leaf " + chart->name() + " has the wrong number of maps";
    ComplexOnChart pulled = pullback_complex(r.tower.nodes[leaf.node].from_root, r.input);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (!(terms[i].matrix() == pulled.terms()[i].matrix()))
        return "map " + std::to_string(i) + " on chart " + chart->name() + " is not the pullback";
      auto check = verify_cert(terms[i], leaf.certs[i]);
      if (!check.ok())
        return "map " + std::to_string(i) + " on chart " + chart->name() + ": " + to_string(check.reason) +
               " (" + check.detail + ")";
    }
    auto kernel = kernel_basis(leaf.certs[0], r.input.rank(0));
    if (kernel.vectors != leaf.kernel.vectors) return "kernel basis on chart " + chart->name() + " is stale";
    if (ranks_from(r.input, leaf.certs) != r.cohomology)
      return "cohomology ranks on chart " + chart->name() + " disagree";
  }
  return {};
}

namespace {

struct FiberProduct {
  ChartPtr chart;
  RingMap from_a;
  RingMap from_b;
};

std::optional<FiberProduct> fiber_product(const ChartPtr& a, const RingMap& root_a, const ChartPtr& b,
                                          const RingMap& root_b) {
  std::vector<std::string> names;
  for (const auto& v : a->ring()->names()) names.push_back("a_" + v);
  for (const auto& v : b->ring()->names()) names.push_back("b_" + v);
  auto ring = PolyRing::make(names, a->ring()->order());
  std::vector<Poly> va, vb;
  for (std::size_t i = 0; i < a->nvars(); ++i) va.push_back(Poly::variable(ring, i));
  for (std::size_t i = 0; i < b->nvars(); ++i) vb.push_back(Poly::variable(ring, a->nvars() + i));
  auto into_a = [&](const Poly& f) { return f.substitute(va, ring); };
  auto into_b = [&](const Poly& f) { return f.substitute(vb, ring); };

  std::vector<Poly> rels;
  for (const auto& g : a->relations().generators()) rels.push_back(into_a(g));
  for (const auto& g : b->relations().generators()) rels.push_back(into_b(g));
  for (std::size_t i = 0; i < root_a.images().size(); ++i)
    rels.push_back(into_a(root_a.images()[i]) - into_b(root_b.images()[i]));
  Ideal rel(ring, rels);
  for (const auto& e : a->exceptionals()) rel = saturate(rel, into_a(e.equation));
  for (const auto& e : b->exceptionals()) rel = saturate(rel, into_b(e.equation));
  if (rel.is_unit()) return std::nullopt;
  auto chart = std::make_shared<const Chart>(ring, rel.basis(), std::vector<Exceptional>{},
                                             a->name() + "x" + b->name());
  return FiberProduct{chart, RingMap(a, chart, va), RingMap(b, chart, vb)};
}

}  // namespace

bool base_change_verify(const ResolutionResult& r, const RingMap& g, const ResolutionResult& other) {
  if (!g.source()->same_ring_as(*r.tower.root) || !g.target()->same_ring_as(*other.tower.root))
    throw Error(ErrorCode::ChartMismatch, "base change map does not join the two roots");
  std::size_t overlaps = 0;
  for (const auto& la : r.leaves) {
    const auto& na = r.tower.nodes[la.node];
    for (const auto& lb : other.leaves) {
      const auto& nb = other.tower.nodes[lb.node];
      RingMap b_over_root = compose(nb.from_root, g);
      auto fp = fiber_product(na.chart, na.from_root, nb.chart, b_over_root);
      if (!fp) continue;
      ++overlaps;
      const auto& F = fp->chart;
      if (la.kernel.rank != lb.kernel.rank) return false;
      const std::size_t p = r.input.rank(0);
      const std::size_t k = la.kernel.rank;
      const std::size_t m = la.certs[0].rank();
      PolyMatrix K(F->ring(), p, k), Kb(F->ring(), p, k);
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t i = 0; i < p; ++i) {
          K(i, c) = apply_map(fp->from_a, la.kernel.vectors[c][i]);
          Kb(i, c) = apply_map(fp->from_b, lb.kernel.vectors[c][i]);
        }
      PolyMatrix w = reduce(F, map_matrix(fp->from_a, la.certs[0].V_inverse) * Kb);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < k; ++c)
          if (!w(i, c).is_zero()) return false;
      PolyMatrix t = w.block(m, 0, k, k);
      if (!F->is_unit(F->reduce(determinant(t)))) return false;
      if (!(reduce(F, K * t) == reduce(F, Kb))) return false;
    }
  }
  if (overlaps == 0) throw Error(ErrorCode::NoCommonLeaf, "no pair of leaves overlaps");
  return true;
}

}  // namespace resolvent
