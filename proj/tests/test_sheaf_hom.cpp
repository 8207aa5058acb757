#include <doctest.h>

#include <random>

#include "resolvent/error.hpp"
#include "resolvent/matrix_hom.hpp"
#include "test_support.hpp"

using namespace resolvent;
using testing::P;

namespace {

MatrixHom diag_xy(const ChartPtr& A) { return MatrixHom(A, 2, 2, {"x", "0", "0", "y"}); }

MatrixHom random_matrix(std::mt19937& rng, const ChartPtr& chart, std::size_t rows, std::size_t cols) {
  PolyMatrix m(chart->ring(), rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = testing::random_poly(rng, chart->ring(), 2, 2, 3);
  return MatrixHom(chart, m);
}

}  // namespace

TEST_CASE("determinantal_ideal examples") {
  auto A = Chart::affine({"x", "y"});
  auto R = A->ring();
  CHECK(ideal_equal(determinantal_ideal(diag_xy(A), 0), Ideal(R, {P(R, "x"), P(R, "y")})));
  CHECK(ideal_equal(determinantal_ideal(diag_xy(A), 1), Ideal(R, {P(R, "x*y")})));
  CHECK(determinantal_ideal(diag_xy(A), 2).is_zero());
  auto B = Chart::affine({"x", "y", "z", "w"});
  MatrixHom g(B, 2, 2, {"x", "y", "z", "w"});
  CHECK(ideal_equal(determinantal_ideal(g, 1), Ideal(B->ring(), {P(B->ring(), "x*w - y*z")})));
}

TEST_CASE("minors are sorted and deduplicated") {
  auto A = Chart::affine({"x", "y"});
  MatrixHom m(A, 2, 2, {"x", "x", "2*x", "y"});
  auto ones = minors(m, 1);
  REQUIRE(ones.size() == 2);
  CHECK(ones[0].to_string() == "x");
  CHECK(ones[1].to_string() == "y");
  CHECK(minors(m, 3).empty());
}

TEST_CASE("minor sizes beyond six are rejected") {
  auto A = Chart::affine({"x"});
  auto I7 = MatrixHom::identity(A, 7);
  CHECK(minors(I7, 6).size() == 1);
  try {
    minors(I7, 7);
    FAIL("expected MinorSizeExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MinorSizeExceeded);
  }
}

TEST_CASE("determinant by expansion") {
  auto A = Chart::affine({"x", "y", "z", "w"});
  MatrixHom g(A, 2, 2, {"x", "y", "z", "w"});
  CHECK(determinant(g.matrix()) == P(A->ring(), "x*w - y*z"));
  MatrixHom t(A, 3, 3, {"1", "x", "y", "0", "1", "z", "0", "0", "w"});
  CHECK(determinant(t.matrix()) == P(A->ring(), "w"));
  MatrixHom perm(A, 3, 3, {"0", "1", "0", "0", "0", "1", "1", "0", "0"});
  CHECK(determinant(perm.matrix()) == P(A->ring(), "1"));
  MatrixHom swap(A, 2, 2, {"0", "1", "1", "0"});
  CHECK(determinant(swap.matrix()) == P(A->ring(), "-1"));
}

TEST_CASE("image_rank examples") {
  auto A = Chart::affine({"x", "y"});
  CHECK(image_rank(MatrixHom::zero(A, 2, 3)) == 0);
  CHECK(image_rank(MatrixHom::identity(A, 4)) == 4);
  CHECK(image_rank(diag_xy(A)) == 2);
  auto C = std::make_shared<const Chart>(A->ring(), std::vector<Poly>{P(A->ring(), "y")});
  CHECK(image_rank(MatrixHom(C, 2, 2, {"x", "0", "0", "y"})) == 1);
}

TEST_CASE("is_regular_point examples") {
  auto A = Chart::affine({"x", "y"});
  CHECK(is_regular_point(diag_xy(A), {Rational(1), Rational(1)}));
  CHECK_FALSE(is_regular_point(diag_xy(A), {Rational(0), Rational(1)}));
  CHECK(is_regular_point(MatrixHom::identity(A, 3), {Rational(5), Rational(-2, 3)}));
  auto C = std::make_shared<const Chart>(A->ring(), std::vector<Poly>{P(A->ring(), "x*y - 1")});
  CHECK_THROWS_AS(is_regular_point(MatrixHom::identity(C, 1), {Rational(0), Rational(0)}), Error);
}

TEST_CASE("pullback_hom examples") {
  auto A = Chart::affine({"x", "y"});
  auto T = Chart::affine({"x", "t"});
  RingMap m(A, T, {P(T->ring(), "x"), P(T->ring(), "x*t")});
  auto pulled = pullback_hom(m, diag_xy(A));
  CHECK(pulled.matrix() == MatrixHom(T, 2, 2, {"x", "0", "0", "x*t"}).matrix());
  CHECK(pullback_hom(RingMap::identity(A), diag_xy(A)).matrix() == diag_xy(A).matrix());
  CHECK(pullback_hom(m, MatrixHom::zero(A, 2, 3)).matrix().is_zero());
}

TEST_CASE("direct_sum examples") {
  auto A = Chart::affine({"x", "y", "z"});
  MatrixHom x(A, 1, 1, {"x"}), y(A, 1, 1, {"y"}), z(A, 1, 1, {"z"});
  CHECK(direct_sum(x, y).matrix() == MatrixHom(A, 2, 2, {"x", "0", "0", "y"}).matrix());
  MatrixHom empty = MatrixHom::zero(A, 0, 0);
  CHECK(direct_sum(x, empty).matrix() == x.matrix());
  CHECK(direct_sum(direct_sum(x, y), z).matrix() ==
        MatrixHom(A, 3, 3, {"x", "0", "0", "0", "y", "0", "0", "0", "z"}).matrix());
  auto B = Chart::affine({"s"});
  CHECK_THROWS_AS(direct_sum(x, MatrixHom(B, 1, 1, {"s"})), Error);
}

TEST_CASE("base_change_check examples") {
  auto A = Chart::affine({"x", "y"});
  CHECK(base_change_check(RingMap::identity(A), diag_xy(A), 0));
  auto T = Chart::affine({"x", "t"});
  RingMap m(A, T, {P(T->ring(), "x"), P(T->ring(), "x*t")});
  CHECK(base_change_check(m, diag_xy(A), 0));
  auto B = Chart::affine({"x", "y", "z", "w"});
  auto C = Chart::affine({"x", "y", "z"});
  RingMap w(B, C, {P(C->ring(), "x"), P(C->ring(), "y"), P(C->ring(), "z"), P(C->ring(), "y*z")});
  CHECK(base_change_check(w, MatrixHom(B, 2, 2, {"x", "y", "z", "w"}), 1));
}

TEST_CASE("determinantal ideals decrease with r") {
  auto A = Chart::affine({"x", "y", "z"});
  std::mt19937 rng(53);
  for (int trial = 0; trial < 8; ++trial) {
    auto m = random_matrix(rng, A, 3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      CHECK(determinantal_ideal(m, r).contains(determinantal_ideal(m, r + 1)));
  }
}

TEST_CASE("image_rank is preserved by dominant pullbacks") {
  auto A = Chart::affine({"x", "y"});
  auto T = Chart::affine({"x", "t"});
  std::mt19937 rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Poly> images{P(T->ring(), "x"), P(T->ring(), "x*t")};
    if (trial % 2) images = {P(T->ring(), "x + t^2"), P(T->ring(), "t")};
    RingMap m(A, T, images);
    REQUIRE(is_dominant_heuristic(m));
    PolyMatrix raw(A->ring(), 2, 3);
    for (std::size_t c = 0; c < 3; ++c) raw(0, c) = testing::random_poly(rng, A->ring(), 2, 2, 3);
    for (std::size_t c = 0; c < 3; ++c) raw(1, c) = trial % 3 ? raw(0, c) * P(A->ring(), "x - y") : testing::random_poly(rng, A->ring(), 2, 2, 3);
    MatrixHom phi(A, raw);
    CHECK(image_rank(pullback_hom(m, phi)) == image_rank(phi));
  }
}

TEST_CASE("base change holds on random substitutions") {
  auto A = Chart::affine({"x", "y"});
  auto B = Chart::affine({"s", "t"});
  std::mt19937 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Poly> images;
    for (int i = 0; i < 2; ++i) images.push_back(testing::random_poly(rng, B->ring(), 2, 2, 3));
    RingMap m(A, B, images);
    auto phi = random_matrix(rng, A, 2, 2);
    for (std::size_t r = 0; r < 2; ++r) CHECK(base_change_check(m, phi, r));
  }
}

TEST_CASE("complexes check composite zero at construction and after pullback") {
  auto A = Chart::affine({"x", "y"});
  MatrixHom d0(A, 2, 1, {"x", "y"});
  MatrixHom d1(A, 1, 2, {"-y", "x"});
  ComplexOnChart k({d0, d1});
  CHECK(k.rank(0) == 1);
  CHECK(k.rank(1) == 2);
  CHECK(k.rank(2) == 1);
  MatrixHom bad(A, 1, 2, {"y", "x"});
  CHECK_THROWS_AS(ComplexOnChart({d0, bad}), Error);
  auto T = Chart::affine({"x", "t"});
  RingMap m(A, T, {P(T->ring(), "x"), P(T->ring(), "x*t")});
  auto pulled = pullback_complex(m, k);
  CHECK(compose(pulled.terms()[1], pulled.terms()[0]).matrix().is_zero());
}
