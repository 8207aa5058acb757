#include "resolvent/euler.hpp"

#include <algorithm>
#include <random>

#include "resolvent/error.hpp"

namespace resolvent {

GradedMatrix::GradedMatrix(RingPtr ring, std::vector<long> source_twists, std::vector<long> target_twists,
                           PolyMatrix entries)
    : ring_(std::move(ring)), source_(std::move(source_twists)), target_(std::move(target_twists)),
      entries_(std::move(entries)) {
  if (entries_.rows() != target_.size() || entries_.cols() != source_.size())
    throw Error(ErrorCode::InvalidArgument, "graded matrix shape does not match its twists");
  for (std::size_t j = 0; j < rows(); ++j)
    for (std::size_t i = 0; i < cols(); ++i) {
      const Poly& f = entries_(j, i);
      if (f.is_zero()) continue;
      if (f.nvars() != ring_->nvars())
        throw Error(ErrorCode::ContextMismatch, "graded matrix entry lives in another ring");
      const long want = target_[j] - source_[i];
      for (const auto& t : f.terms())
        if (static_cast<long>(t.mono.degree()) != want)
          throw Error(ErrorCode::InvalidArgument, "entry (" + std::to_string(j) + ", " + std::to_string(i) +
                                                      ") = " + f.to_string() + " is not a form of degree " +
                                                      std::to_string(want));
    }
}

GradedMatrix GradedMatrix::permuted(const std::vector<std::size_t>& order) const {
  if (order.size() != cols()) throw Error(ErrorCode::InvalidArgument, "permutation has the wrong length");
  std::vector<long> src;
  PolyMatrix m(ring_, rows(), cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    src.push_back(source_.at(order[k]));
    for (std::size_t j = 0; j < rows(); ++j) m(j, k) = entries_(j, order[k]);
  }
  return GradedMatrix(ring_, src, target_, m);
}

namespace {

using QVec = std::vector<Rational>;

/// Row echelon form in place; returns the rank.
std::size_t echelon(std::vector<QVec>& rows, std::size_t ncols, std::vector<std::size_t>* pivots = nullptr) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    Rational inv = 1 / rows[rank][c];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      Rational f = rows[r][c];
      for (std::size_t k = c; k < ncols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    if (pivots) pivots->push_back(c);
    ++rank;
  }
  return rank;
}

std::vector<QVec> nullspace(std::vector<QVec> rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  const std::size_t rank = echelon(rows, ncols, &pivots);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<QVec> out;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    QVec v(ncols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < rank; ++r) v[pivots[r]] = -rows[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

/// Coordinates of forms of degree e + a_i in two variables, indexed by the
/// exponent of the second variable.
struct GradedSpace {
  std::vector<long> sizes;
  std::vector<std::size_t> offsets;
  std::size_t total = 0;

  GradedSpace(const std::vector<long>& twists, long e) {
    for (auto a : twists) {
      offsets.push_back(total);
      const long n = e + a;
      sizes.push_back(n >= 0 ? n + 1 : 0);
      total += static_cast<std::size_t>(sizes.back());
    }
  }
};

std::vector<QVec> kernel_in_degree(const GradedMatrix& m, long e) {
  GradedSpace src(m.source_twists(), e), dst(m.target_twists(), e);
  std::vector<QVec> rows(dst.total, QVec(src.total, 0));
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (long k = 0; k < src.sizes[i]; ++k)
      for (std::size_t j = 0; j < m.rows(); ++j)
        for (const auto& t : m.entries()(j, i).terms())
          rows[dst.offsets[j] + static_cast<std::size_t>(k) + t.mono[1]][src.offsets[i] + static_cast<std::size_t>(k)] +=
              t.coeff;
  if (src.total == 0) return {};
  return nullspace(std::move(rows), src.total);
}

}  // namespace

std::vector<long> splitting_type_P1(const GradedMatrix& m, long degree_cap) {
  if (m.ring()->nvars() != 2) throw Error(ErrorCode::InvalidArgument, "P1 needs two homogeneous variables");
  if (m.cols() == 0) return {};
  auto chart = std::make_shared<const Chart>(m.ring(), std::vector<Poly>{});
  const std::size_t rank = image_rank(MatrixHom(chart, m.entries()));
  const std::size_t want = m.cols() - rank;
  std::vector<long> twists;
  if (want == 0) return twists;

  const long start = -*std::max_element(m.source_twists().begin(), m.source_twists().end());
  std::vector<QVec> previous;
  for (long e = start; e <= start + degree_cap; ++e) {
    auto kernel = kernel_in_degree(m, e);
    GradedSpace here(m.source_twists(), e), before(m.source_twists(), e - 1);
    std::vector<QVec> shifted;
    for (const auto& v : previous) {
      QVec sv(here.total, 0), tv(here.total, 0);
      for (std::size_t i = 0; i < m.cols(); ++i)
        for (long k = 0; k < before.sizes[i]; ++k) {
          const Rational& x = v[before.offsets[i] + static_cast<std::size_t>(k)];
          sv[here.offsets[i] + static_cast<std::size_t>(k)] = x;
          tv[here.offsets[i] + static_cast<std::size_t>(k) + 1] = x;
        }
      shifted.push_back(std::move(sv));
      shifted.push_back(std::move(tv));
    }
    const std::size_t old = echelon(shifted, here.total);
    for (std::size_t g = old; g < kernel.size(); ++g) twists.push_back(-e);
    if (twists.size() >= want) {
      std::sort(twists.begin(), twists.end());
      return twists;
    }
    previous = std::move(kernel);
  }
  throw Error(ErrorCode::DegreeCapExceeded,
              "kernel not generated below syzygy degree " + std::to_string(start + degree_cap));
}

namespace {

std::vector<long> padded(const std::vector<long>& e, std::size_t n) {
  std::vector<long> out = e;
  if (out.size() < n) out.resize(n, 0);
  return out;
}

}  // namespace

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
  const std::size_t n = std::max(a.e.size(), b.e.size());
  DivisorClass out{a.h + b.h, padded(a.e, n)};
  auto be = padded(b.e, n);
  for (std::size_t i = 0; i < n; ++i) out.e[i] += be[i];
  return out;
}

DivisorClass operator*(long k, const DivisorClass& a) {
  DivisorClass out{k * a.h, a.e};
  for (auto& x : out.e) x *= k;
  return out;
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) { return a + (-1) * b; }

Geometry Geometry::blown_p2(std::vector<ProjectivePoint> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p[0] == 0 && p[1] == 0 && p[2] == 0) throw Error(ErrorCode::InvalidArgument, "(0:0:0) is not a point");
    for (std::size_t j = 0; j < i; ++j) {
      const auto& q = points[j];
      if (p[1] * q[2] == p[2] * q[1] && p[2] * q[0] == p[0] * q[2] && p[0] * q[1] == p[1] * q[0])
        throw Error(ErrorCode::InvalidArgument, "blown points " + std::to_string(j) + " and " +
                                                    std::to_string(i) + " coincide");
    }
  }
  return {Kind::BlownP2, std::move(points)};
}

std::string to_string(Geometry::Kind kind) {
  switch (kind) {
    case Geometry::Kind::P1: return "P1";
    case Geometry::Kind::P2: return "P2";
    case Geometry::Kind::BlownP2: return "BlownP2";
  }
  return "unknown";
}

long intersection_pairing(const Geometry& g, const DivisorClass& a, const DivisorClass& b) {
  if (g.dimension() != 2) throw Error(ErrorCode::InvalidArgument, "intersection pairing needs a surface");
  const std::size_t n = g.exceptional_count();
  if (a.e.size() > n || b.e.size() > n)
    throw Error(ErrorCode::InvalidArgument, "divisor class names more exceptionals than the geometry has");
  auto ae = padded(a.e, n), be = padded(b.e, n);
  long s = a.h * b.h;
  for (std::size_t i = 0; i < n; ++i) s -= ae[i] * be[i];
  return s;
}

ChernTotal chern_of_virtual(const Geometry& g, const VirtualSplit& v) {
  ChernTotal c;
  c.c1.e.assign(g.exceptional_count(), 0);
  for (const auto& d : v.plus) c.c1 = c.c1 + d;
  for (const auto& d : v.minus) c.c1 = c.c1 - d;
  if (g.dimension() < 2) return c;
  long c2 = 0;
  for (std::size_t i = 0; i < v.plus.size(); ++i)
    for (std::size_t j = i + 1; j < v.plus.size(); ++j) c2 += intersection_pairing(g, v.plus[i], v.plus[j]);
  for (const auto& p : v.plus)
    for (const auto& m : v.minus) c2 -= intersection_pairing(g, p, m);
  for (std::size_t i = 0; i < v.minus.size(); ++i)
    for (std::size_t j = i; j < v.minus.size(); ++j) c2 += intersection_pairing(g, v.minus[i], v.minus[j]);
  c.c2 = c2;
  return c;
}

ChernTotal chern_of_split(const Geometry& g, const std::vector<DivisorClass>& classes) {
  return chern_of_virtual(g, VirtualSplit{classes, {}});
}

long euler_number(const Geometry& g, const KernelClasses& kernel, bool torsion_ok) {
  if (!torsion_ok) throw Error(ErrorCode::NotTorsion, "higher cohomology has positive generic rank");
  const long dim = static_cast<long>(g.dimension());
  if (const auto* twists = std::get_if<std::vector<long>>(&kernel)) {
    if (g.kind != Geometry::Kind::P1) throw Error(ErrorCode::InvalidArgument, "splitting twists need P1");
    const long rank = static_cast<long>(twists->size());
    if (rank > dim) return 0;
    if (rank < dim) throw Error(ErrorCode::RankDimensionMismatch, "kernel of rank 0 on P1");
    return twists->front();
  }
  const auto& v = std::get<VirtualSplit>(kernel);
  if (g.kind == Geometry::Kind::P1) throw Error(ErrorCode::InvalidArgument, "split classes need a surface");
  const long rank = v.rank();
  if (rank > dim) return 0;
  ChernTotal c = chern_of_virtual(g, v);
  if (rank < dim) {
    std::string cls = std::to_string(c.c1.h) + "H";
    for (std::size_t i = 0; i < c.c1.e.size(); ++i) cls += " + " + std::to_string(c.c1.e[i]) + "E" + std::to_string(i + 1);
    throw Error(ErrorCode::RankDimensionMismatch,
                "kernel of rank " + std::to_string(rank) + " on a surface; its top class is c1 = " + cls);
  }
  return c.c2;
}

MatrixHom dehomogenize(const GradedMatrix& m) {
  const auto& names = m.ring()->names();
  if (names.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two homogeneous variables");
  auto chart = Chart::affine(std::vector<std::string>(names.begin(), names.end() - 1), m.ring()->order());
  const auto& ring = chart->ring();
  std::vector<Poly> images;
  for (std::size_t i = 0; i + 1 < names.size(); ++i) images.push_back(Poly::variable(ring, i));
  images.push_back(Poly::constant(ring, 1));
  PolyMatrix out(ring, m.rows(), m.cols());
  for (std::size_t j = 0; j < m.rows(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) out(j, i) = m.entries()(j, i).substitute(images, ring);
  return MatrixHom(chart, out);
}

namespace {

Poly dehomogenized(const Poly& f, std::size_t at, const RingPtr& plane) {
  std::vector<Poly> images;
  std::size_t k = 0;
  for (std::size_t i = 0; i < 3; ++i) images.push_back(i == at ? Poly::constant(plane, 1) : Poly::variable(plane, k++));
  return f.substitute(images, plane);
}

/// Two independent linear forms through p: components of X x p.
std::array<Poly, 2> lines_through(const RingPtr& ring, const ProjectivePoint& p) {
  auto x = Poly::variable(ring, 0), y = Poly::variable(ring, 1), z = Poly::variable(ring, 2);
  std::vector<Poly> forms{p[2] * y - p[1] * z, p[0] * z - p[2] * x, p[1] * x - p[0] * y};
  std::vector<Poly> kept;
  for (auto& f : forms) {
    if (f.is_zero()) continue;
    if (kept.size() == 1) {
      // independent unless proportional to the first
      Poly scaled = kept[0] * f.leading_coefficient() - f * kept[0].leading_coefficient();
      if (scaled.is_zero()) continue;
    }
    kept.push_back(f);
    if (kept.size() == 2) break;
  }
  return {kept[0], kept[1]};
}

void check_base_locus(const Geometry& g, const std::vector<Poly>& forms) {
  const auto& ring = forms.front().ring();
  std::vector<std::array<Poly, 2>> lines;
  for (const auto& p : g.points) lines.push_back(lines_through(ring, p));
  const std::size_t k = g.points.size();
  for (std::size_t at = 3; at-- > 0;) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < 3; ++i)
      if (i != at) names.push_back(ring->name(i));
    auto plane = PolyRing::make(names);
    std::vector<Poly> gens;
    for (const auto& f : forms) gens.push_back(dehomogenized(f, at, plane));
    const Ideal base(plane, gens);
    for (std::size_t choice = 0; choice < (std::size_t{1} << k); ++choice) {
      Ideal rest = base;
      for (std::size_t i = 0; i < k; ++i) rest = saturate(rest, dehomogenized(lines[i][(choice >> i) & 1], at, plane));
      if (!rest.is_unit())
        throw Error(ErrorCode::UnlistedBasePoint,
                    "the forms have a base point off the listed points in the chart " + ring->name(at) + " = 1");
    }
  }
}

long order_at(const ProjectivePoint& p, const std::vector<Poly>& forms) {
  const auto& ring = forms.front().ring();
  std::size_t at = 2;
  while (p[at] == 0) --at;
  auto chart = Chart::affine({"u", "v"});
  const auto& plane = chart->ring();
  std::vector<Poly> images;
  std::size_t k = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (i == at) {
      images.push_back(Poly::constant(plane, 1));
    } else {
      images.push_back(Poly::variable(plane, k++) + Poly::constant(plane, p[i] / p[at]));
    }
  }
  std::vector<Poly> local;
  for (const auto& f : forms) local.push_back(f.substitute(images, plane));
  auto step = blowup(chart, Ideal(plane, {chart->variable("u"), chart->variable("v")}));
  std::optional<long> order;
  for (const auto& child : step.children) {
    const auto& c = child.chart;
    std::vector<Poly> pulled;
    for (const auto& f : local) {
      Poly q = apply_map(child.map, f);
      if (!c->is_zero(q)) pulled.push_back(q);
    }
    std::vector<long> powers;
    for (auto& q : pulled) {
      long n = 0;
      while (auto d = c->divide(q, child.exceptional)) {
        q = *d;
        ++n;
      }
      powers.push_back(n);
    }
    const long least = *std::min_element(powers.begin(), powers.end());
    std::vector<Poly> residual{child.exceptional};
    for (std::size_t i = 0; i < pulled.size(); ++i)
      residual.push_back(pulled[i] * child.exceptional.pow(static_cast<unsigned>(powers[i] - least)));
    if (!(Ideal(c->ring(), residual) + c->relations()).is_unit())
      throw Error(ErrorCode::InfinitelyNearPoint,
                  "one blowup at (" + p[0].get_str() + ":" + p[1].get_str() + ":" + p[2].get_str() +
                      ") leaves base points on the exceptional curve");
    if (order && *order != least)
      throw Error(ErrorCode::Verification, "exceptional order differs between charts");
    order = least;
  }
  return order.value_or(0);
}

}  // namespace

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  if (seed == 0) return out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(out[i - 1], out[rng() % i]);
  return out;
}

std::vector<long> exceptional_orders(const Geometry& g, const GradedMatrix& row) {
  if (g.dimension() != 2 || row.ring()->nvars() != 3)
    throw Error(ErrorCode::InvalidArgument, "exceptional orders need a row map on P2");
  if (row.rows() != 1) throw Error(ErrorCode::InvalidArgument, "exceptional orders need a single-row map");
  std::vector<Poly> forms;
  for (std::size_t i = 0; i < row.cols(); ++i)
    if (!row.entries()(0, i).is_zero()) forms.push_back(row.entries()(0, i));
  if (forms.empty()) throw Error(ErrorCode::InvalidArgument, "the row map vanishes");
  check_base_locus(g, forms);
  std::vector<long> out;
  for (const auto& p : g.points) out.push_back(order_at(p, forms));
  return out;
}

EulerRun compute_euler(const Geometry& g, const GradedMatrix& m, const EulerOptions& options) {
  if (m.ring()->nvars() != g.dimension() + 1)
    throw Error(ErrorCode::InvalidArgument, to_string(g.kind) + " needs " + std::to_string(g.dimension() + 1) +
                                                " homogeneous variables");
  EulerRun run;
  run.geometry = g;
  const GradedMatrix M = m.permuted(seeded_permutation(m.cols(), options.seed));

  ResolveOptions ro;
  ro.max_depth = options.max_depth;
  ro.reduce.seed = options.seed;
  if (options.seed) ro.shuffle_seed = options.seed;
  run.resolution = resolve_complex(ComplexOnChart({dehomogenize(M)}), ro);
  run.torsion_ok = torsion_check(run.resolution);
  if (!run.torsion_ok) throw Error(ErrorCode::NotTorsion, "the cokernel has positive generic rank");

  if (g.kind == Geometry::Kind::P1) {
    run.twists = splitting_type_P1(M, options.degree_cap);
    run.kernel_rank = static_cast<long>(run.twists.size());
    std::vector<DivisorClass> classes;
    for (auto t : run.twists) classes.push_back({t, {}});
    run.chern = chern_of_split(g, classes);
    run.number = euler_number(g, run.twists, run.torsion_ok);
    return run;
  }

  if (M.rows() != 1) throw Error(ErrorCode::InvalidArgument, "surface Euler numbers need a single-row map");
  const auto point_order = seeded_permutation(g.points.size(), options.seed);
  Geometry shuffled = g;
  for (std::size_t k = 0; k < point_order.size(); ++k) shuffled.points[k] = g.points[point_order[k]];
  const auto orders = exceptional_orders(shuffled, M);
  run.orders.assign(g.points.size(), 0);
  for (std::size_t k = 0; k < point_order.size(); ++k) run.orders[point_order[k]] = orders[k];

  const std::size_t n = g.points.size();
  VirtualSplit v;
  for (auto a : M.source_twists()) v.plus.push_back({a, std::vector<long>(n, 0)});
  DivisorClass line{M.target_twists()[0], std::vector<long>(n, 0)};
  for (std::size_t k = 0; k < n; ++k) line.e[k] = -run.orders[k];
  v.minus.push_back(line);
  run.kernel_rank = v.rank();
  run.chern = chern_of_virtual(g, v);
  run.number = euler_number(g, v, run.torsion_ok);
  return run;
}

IndependenceReport independence_harness(const Geometry& g, const GradedMatrix& m,
                                        const std::vector<std::uint64_t>& seeds, const EulerOptions& options) {
  IndependenceReport r;
  for (auto seed : seeds) {
    EulerOptions o = options;
    o.seed = seed;
    r.seeds.push_back(seed);
    r.numbers.push_back(compute_euler(g, m, o).number);
    if (r.numbers.back() != r.numbers.front()) r.agree = false;
  }
  return r;
}

}  // namespace resolvent
