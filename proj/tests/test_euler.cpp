#include <doctest.h>

#include <optional>
#include <random>

#include "resolvent/error.hpp"
#include "resolvent/euler.hpp"
#include "snf_oracle.hpp"
#include "test_support.hpp"

using namespace resolvent;
using testing::P;

namespace {

RingPtr st() { return PolyRing::make({"s", "t"}); }
RingPtr xyz() { return PolyRing::make({"x", "y", "z"}); }

GradedMatrix row(const RingPtr& ring, std::vector<long> src, long d, const std::vector<std::string>& forms) {
  PolyMatrix m(ring, 1, forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) m(0, i) = P(ring, forms[i]);
  return GradedMatrix(ring, std::move(src), {d}, m);
}

GradedMatrix row0(const RingPtr& ring, long d, const std::vector<std::string>& forms) {
  return row(ring, std::vector<long>(forms.size(), 0), d, forms);
}

template <class F>
std::optional<ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// --- oracle: degree of the gcd of binary forms via univariate Euclid ---------

snf_oracle::UPoly at_t1(const Poly& f) {
  snf_oracle::UPoly u;
  for (const auto& term : f.terms()) {
    std::size_t d = term.mono[0];
    if (u.c.size() <= d) u.c.resize(d + 1, 0);
    u.c[d] += term.coeff;
  }
  u.trim();
  return u;
}

long t_order(const Poly& f) {
  long least = -1;
  for (const auto& term : f.terms())
    if (least < 0 || static_cast<long>(term.mono[1]) < least) least = term.mono[1];
  return least;
}

long gcd_degree(const std::vector<Poly>& forms) {
  snf_oracle::UPoly g;
  long tpow = -1;
  for (const auto& f : forms) {
    if (f.is_zero()) continue;
    auto u = at_t1(f);
    while (!u.zero()) {
      auto r = snf_oracle::divmod(g, u).second;
      g = u;
      u = r;
    }
    long o = t_order(f);
    tpow = tpow < 0 ? o : std::min(tpow, o);
  }
  return g.degree() + tpow;
}

// --- oracle: coefficient of t^2 in prod(1 + a_i t) / (1 + d t) ---------------

long series_c2(const std::vector<long>& a, long d) {
  std::vector<long> num{1, 0, 0};
  for (auto ai : a) {
    std::vector<long> next(3, 0);
    for (int k = 0; k < 3; ++k) {
      next[k] += num[k];
      if (k + 1 < 3) next[k + 1] += ai * num[k];
    }
    num = next;
  }
  // 1 / (1 + d t) = 1 - d t + d^2 t^2
  std::vector<long> inv{1, -d, d * d};
  return num[0] * inv[2] + num[1] * inv[1] + num[2] * inv[0];
}

Poly random_binary_form(std::mt19937& rng, const RingPtr& ring, long degree) {
  Poly f(ring);
  for (long k = 0; k <= degree; ++k) {
    long c = static_cast<long>(rng() % 7) - 3;
    if (c == 0) continue;
    f += Poly::monomial(ring, Monomial({static_cast<std::uint32_t>(degree - k), static_cast<std::uint32_t>(k)}), c);
  }
  if (f.is_zero()) f = Poly::monomial(ring, Monomial({static_cast<std::uint32_t>(degree), 0}));
  return f;
}

}  // namespace

TEST_CASE("graded matrices check homogeneity") {
  auto R = st();
  CHECK_THROWS_AS(row0(R, 2, {"s^2 + t", "t^2"}), Error);
  CHECK_THROWS_AS(row(R, {0, 3}, 2, {"s^2", "s"}), Error);
  CHECK_NOTHROW(row(R, {0, 3}, 2, {"s^2", "0"}));
}

TEST_CASE("splitting_type_P1 examples") {
  auto R = st();
  PolyMatrix z(R, 1, 1);
  CHECK(splitting_type_P1(GradedMatrix(R, {0}, {0}, z)) == std::vector<long>{0});
  CHECK(splitting_type_P1(row0(R, 3, {"s^3", "t^3"})) == std::vector<long>{-3});
  CHECK(splitting_type_P1(row0(R, 3, {"s^2*t", "s*t^2"})) == std::vector<long>{-1});
  CHECK(splitting_type_P1(row0(R, 1, {"s", "t", "s + t"})) == std::vector<long>{-1, 0});
  CHECK(splitting_type_P1(row0(R, 2, {"s^2", "t^2", "s*t"})) == std::vector<long>{-1, -1});
  CHECK(splitting_type_P1(row(R, {1, 0}, 2, {"s", "t^2"})) == std::vector<long>{-1});
  CHECK(splitting_type_P1(GradedMatrix(R, {0, 0}, {1, 1}, PolyMatrix(2, 2, {P(R, "s"), P(R, "0"), P(R, "0"), P(R, "t")}))).empty());
}

TEST_CASE("the syzygy degree search stops at the cap") {
  auto R = st();
  CHECK(code_of([&] { splitting_type_P1(row0(R, 5, {"s^5", "t^5"}), 3); }) == ErrorCode::DegreeCapExceeded);
  CHECK(splitting_type_P1(row0(R, 5, {"s^5", "t^5"}), 5) == std::vector<long>{-5});
}

TEST_CASE("P1 Euler numbers match the gcd oracle") {
  auto R = st();
  std::mt19937 rng(101);
  for (long d = 1; d <= 4; ++d)
    for (long e = 0; e < d; ++e) {
      // a planted common factor of degree e times coprime cofactors
      Poly h = e ? random_binary_form(rng, R, e) : P(R, "1");
      Poly f = h * Poly::monomial(R, Monomial({static_cast<std::uint32_t>(d - e), 0}));
      Poly g = h * (Poly::monomial(R, Monomial({0, static_cast<std::uint32_t>(d - e)})) +
                    Poly::monomial(R, Monomial({1, static_cast<std::uint32_t>(d - e - 1)})));
      GradedMatrix m(R, {0, 0}, {d}, PolyMatrix(1, 2, {f, g}));
      const long oracle = gcd_degree({f, g}) - d;
      CHECK(gcd_degree({f, g}) >= e);
      auto run = compute_euler(Geometry::p1(), m);
      CHECK(run.number == oracle);
      CHECK(run.torsion_ok);
    }
}

TEST_CASE("determinant conservation on P1") {
  auto R = st();
  std::mt19937 rng(103);
  for (int trial = 0; trial < 12; ++trial) {
    const long d = 2 + static_cast<long>(rng() % 3);
    const long e = static_cast<long>(rng() % 2);
    const std::size_t p = 2 + rng() % 2;
    Poly h = e ? random_binary_form(rng, R, e) : P(R, "1");
    std::vector<long> src;
    std::vector<Poly> forms;
    for (std::size_t i = 0; i < p; ++i) {
      const long a = static_cast<long>(rng() % 2);
      src.push_back(a);
      forms.push_back(h * random_binary_form(rng, R, d - a - e));
    }
    GradedMatrix m(R, src, {d}, PolyMatrix(1, p, forms));
    auto twists = splitting_type_P1(m);
    REQUIRE(twists.size() == p - 1);
    long sum_ker = 0, sum_src = 0;
    for (auto t : twists) sum_ker += t;
    for (auto a : src) sum_src += a;
    CHECK(sum_ker == sum_src - (d - gcd_degree(forms)));
  }
}

TEST_CASE("intersection pairing") {
  auto g = Geometry::blown_p2({{1, 0, 0}, {0, 1, 0}});
  DivisorClass H{1, {0, 0}}, E1{0, {1, 0}}, E2{0, {0, 1}};
  CHECK(intersection_pairing(g, H, H) == 1);
  CHECK(intersection_pairing(g, H - E1, H - E1) == 0);
  CHECK(intersection_pairing(g, 2 * H - E1 - E2, H) == 2);
  CHECK(intersection_pairing(g, E1, E2) == 0);
  CHECK_THROWS_AS(intersection_pairing(Geometry::p1(), H, H), Error);

  std::mt19937 rng(107);
  auto pick = [&] {
    return DivisorClass{static_cast<long>(rng() % 9) - 4, {static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 9) - 4}};
  };
  for (int trial = 0; trial < 20; ++trial) {
    auto a = pick(), b = pick(), c = pick();
    const long k = static_cast<long>(rng() % 5) - 2;
    CHECK(intersection_pairing(g, a, b) == intersection_pairing(g, b, a));
    CHECK(intersection_pairing(g, a + k * b, c) == intersection_pairing(g, a, c) + k * intersection_pairing(g, b, c));
  }
}

TEST_CASE("chern_of_split examples") {
  auto g = Geometry::p2();
  DivisorClass H{1, {}};
  auto one = chern_of_split(g, {3 * H});
  CHECK(one.c1 == 3 * H);
  CHECK(one.c2 == 0);
  CHECK(chern_of_split(g, {(-1) * H, (-1) * H}).c2 == 1);
  for (long d = 1; d <= 5; ++d) {
    auto k = chern_of_virtual(g, VirtualSplit{{0 * H, 0 * H, 0 * H}, {d * H}});
    CHECK(k.c2 == series_c2({0, 0, 0}, d));
    CHECK(k.c2 == d * d);
  }
  CHECK(chern_of_virtual(g, VirtualSplit{{H, 0 * H, 2 * H}, {4 * H}}).c2 == series_c2({1, 0, 2}, 4));
}

TEST_CASE("euler_number contract") {
  auto p1 = Geometry::p1();
  CHECK(euler_number(p1, std::vector<long>{-3}, true) == -3);
  CHECK(euler_number(p1, std::vector<long>{-1, 0}, true) == 0);
  CHECK(code_of([&] { euler_number(p1, std::vector<long>{}, true); }) == ErrorCode::RankDimensionMismatch);
  CHECK(code_of([&] { euler_number(p1, std::vector<long>{-3}, false); }) == ErrorCode::NotTorsion);
  DivisorClass H{1, {}};
  auto p2 = Geometry::p2();
  CHECK(code_of([&] { euler_number(p2, VirtualSplit{{0 * H, 0 * H}, {H}}, true); }) ==
        ErrorCode::RankDimensionMismatch);
  CHECK(euler_number(p2, VirtualSplit{{0 * H, 0 * H, 0 * H, 0 * H}, {H}}, true) == 0);
}

TEST_CASE("P2 Euler numbers of generic rows") {
  auto R = xyz();
  CHECK(compute_euler(Geometry::p2(), row0(R, 1, {"x", "y", "z"})).number == 1);
  CHECK(compute_euler(Geometry::p2(), row0(R, 2, {"x^2", "y^2", "z^2"})).number == 4);
  CHECK(compute_euler(Geometry::p2(), row0(R, 2, {"x^2 + y^2", "y^2 + z^2", "z^2 + x^2"})).number == 4);
  CHECK(compute_euler(Geometry::p2(), row0(R, 3, {"x^3 + y*z^2", "y^3", "z^3 + x^2*y"})).number == 9);
  for (long d = 1; d <= 3; ++d) {
    auto x = "x^" + std::to_string(d), y = "y^" + std::to_string(d), z = "z^" + std::to_string(d);
    CHECK(compute_euler(Geometry::p2(), row0(R, d, {x, y, z})).number == series_c2({0, 0, 0}, d));
  }
  CHECK(compute_euler(Geometry::p2(), row(R, {1, 0, 0}, 2, {"x", "y^2", "z^2"})).number == series_c2({1, 0, 0}, 2));
}

TEST_CASE("base points on P2") {
  auto R = xyz();
  CHECK(code_of([&] { compute_euler(Geometry::p2(), row0(R, 2, {"x*y", "y*z", "z*x"})); }) ==
        ErrorCode::UnlistedBasePoint);
  // the quadratic Cremona system is birational onto P2
  auto cremona = Geometry::blown_p2({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  auto run = compute_euler(cremona, row0(R, 2, {"x*y", "y*z", "z*x"}));
  CHECK(run.orders == std::vector<long>{1, 1, 1});
  CHECK(run.number == 1);
  // conics through a point with multiplicity two map onto a conic curve
  auto cone = Geometry::blown_p2({{0, 0, 1}});
  auto flat = compute_euler(cone, row0(R, 2, {"x^2", "x*y", "y^2"}));
  CHECK(flat.orders == std::vector<long>{2});
  CHECK(flat.number == 0);
  // a listed point that is not a base point changes nothing
  auto extra = Geometry::blown_p2({{1, 1, 1}});
  CHECK(compute_euler(extra, row0(R, 1, {"x", "y", "z"})).number == 1);
  // conics tangent to a line at a point need a second blowup
  CHECK(code_of([&] { compute_euler(cone, row0(R, 2, {"y*z", "x^2", "y^2"})); }) ==
        ErrorCode::InfinitelyNearPoint);
  CHECK_THROWS_AS(Geometry::blown_p2({{1, 2, 3}, {2, 4, 6}}), Error);
}

TEST_CASE("Euler numbers ignore unit rescaling and basis order") {
  auto R = xyz();
  auto base = row0(R, 2, {"x^2 + y^2", "y^2 + z^2", "z^2 + x^2"});
  auto scaled = row0(R, 2, {"3*x^2 + 3*y^2", "-y^2 - z^2", "1/2*z^2 + 1/2*x^2"});
  CHECK(compute_euler(Geometry::p2(), base).number == compute_euler(Geometry::p2(), scaled).number);
  auto S = st();
  auto p1 = row0(S, 3, {"s^2*t", "s*t^2 + t^3"});
  auto swapped = row0(S, 3, {"s*t^2 + t^3", "-2*s^2*t"});
  CHECK(compute_euler(Geometry::p1(), p1).number == compute_euler(Geometry::p1(), swapped).number);
  CHECK(compute_euler(Geometry::p1(), p1).number == -2);
}

TEST_CASE("independence harness") {
  auto R = xyz();
  auto cremona = Geometry::blown_p2({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  auto rep = independence_harness(cremona, row0(R, 2, {"x*y", "y*z", "z*x"}), {0, 1, 2, 3, 4});
  CHECK(rep.agree);
  CHECK(rep.numbers == std::vector<long>(5, 1));
  auto S = st();
  auto p1 = independence_harness(Geometry::p1(), row0(S, 3, {"s^2*t", "s*t^2 + t^3"}), {0, 7, 8});
  CHECK(p1.agree);
  CHECK(p1.numbers.front() == -2);
  auto flat = independence_harness(Geometry::p2(), row0(R, 1, {"x", "y", "z"}), {0, 1});
  CHECK(flat.agree);
}

TEST_CASE("seeded permutations") {
  CHECK(seeded_permutation(4, 0) == std::vector<std::size_t>{0, 1, 2, 3});
  auto p = seeded_permutation(6, 9);
  auto sorted = p;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
  CHECK(seeded_permutation(6, 9) == p);
}

TEST_CASE("zero maps are not torsion") {
  auto S = st();
  PolyMatrix z(S, 1, 2);
  CHECK(code_of([&] { compute_euler(Geometry::p1(), GradedMatrix(S, {0, 0}, {1}, z)); }) == ErrorCode::NotTorsion);
}
