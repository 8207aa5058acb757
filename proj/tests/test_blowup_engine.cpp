#include <doctest.h>

#include "resolvent/blowup.hpp"
#include "resolvent/error.hpp"
#include "test_support.hpp"

using namespace resolvent;
using testing::P;

namespace {

std::string describe(const RingMap& m) {
  std::string out = m.target()->name() + ":";
  for (const auto& n : m.target()->ring()->names()) out += " " + n;
  out += " |";
  for (const auto& r : m.target()->relations().generators()) out += " " + r.to_string();
  out += " |";
  for (const auto& p : m.images()) out += " " + p.to_string();
  return out;
}

void check_principal_pullback(const BlowupStep& step) {
  for (const auto& child : step.children) {
    Ideal pulled = pull_ideal(child.map, step.center);
    Ideal expected = Ideal(child.chart->ring(), {child.exceptional}) + child.chart->relations();
    CHECK(ideal_equal(pulled, expected));
  }
}

}  // namespace

TEST_CASE("blowing up the origin of the plane") {
  auto A = Chart::affine({"x", "y"});
  auto step = blowup(A, Ideal(A->ring(), {A->parse("x"), A->parse("y")}));
  REQUIRE(step.children.size() == 2);
  const auto& c1 = step.children[0];
  const auto& c2 = step.children[1];
  CHECK(c1.chart->ring()->names() == std::vector<std::string>{"x", "y_1"});
  CHECK(c1.chart->relations().is_zero());
  CHECK(c1.map.images()[1] == c1.chart->parse("x*y_1"));
  CHECK(c1.exceptional == c1.chart->parse("x"));
  CHECK(c2.chart->ring()->names() == std::vector<std::string>{"y", "x_1"});
  CHECK(c2.map.images()[0] == c2.chart->parse("y*x_1"));
  CHECK(c2.exceptional == c2.chart->parse("y"));
  CHECK(c1.chart->exceptionals().back().label == "E1");
  check_principal_pullback(step);
}

TEST_CASE("a principal center gives one isomorphic child") {
  auto A = Chart::affine({"x", "y"});
  auto step = blowup(A, Ideal(A->ring(), {A->parse("x^2")}));
  REQUIRE(step.children.size() == 1);
  const auto& c = step.children[0];
  CHECK(*c.chart->ring() == *A->ring());
  CHECK(c.chart->relations().is_zero());
  CHECK(c.map.images() == RingMap::identity(A).images());
  check_principal_pullback(step);

  auto two = blowup(A, Ideal(A->ring(), {A->parse("x^2*y"), A->parse("x^2*y + x^2")}));
  CHECK(two.children.size() == 1);
  check_principal_pullback(two);
}

TEST_CASE("blowing up the origin of 3-space") {
  auto A = Chart::affine({"x", "y", "z"});
  auto step = blowup(A, Ideal(A->ring(), {A->parse("x"), A->parse("y"), A->parse("z")}));
  REQUIRE(step.children.size() == 3);
  for (const auto& c : step.children) {
    CHECK(c.chart->nvars() == 3);
    CHECK(c.chart->relations().is_zero());
    CHECK(is_dominant_heuristic(c.map));
  }
  CHECK(step.children[0].map.images()[1] == step.children[0].chart->parse("x*y_1"));
  CHECK(step.children[0].map.images()[2] == step.children[0].chart->parse("x*z_1"));
  check_principal_pullback(step);
}

TEST_CASE("charts keep relations when no variable can be solved for") {
  auto A = Chart::affine({"x", "y"});
  auto step = blowup(A, Ideal(A->ring(), {A->parse("x^2"), A->parse("y^3")}));
  REQUIRE(step.children.size() == 2);
  for (const auto& c : step.children) CHECK(is_dominant_heuristic(c.map));
  check_principal_pullback(step);
}

TEST_CASE("blowups of a chart with relations") {
  // the cone xz = y^2 blown up at its vertex
  auto R = PolyRing::make({"x", "y", "z"});
  auto cone = std::make_shared<const Chart>(R, std::vector<Poly>{P(R, "x*z - y^2")});
  auto step = blowup(cone, Ideal(R, {P(R, "x"), P(R, "y"), P(R, "z")}));
  CHECK(step.children.size() >= 2);
  for (const auto& c : step.children) CHECK(is_dominant_heuristic(c.map));
  check_principal_pullback(step);
}

TEST_CASE("zero centers are rejected") {
  auto R = PolyRing::make({"x", "y"});
  auto C = std::make_shared<const Chart>(R, std::vector<Poly>{P(R, "x")});
  try {
    blowup(C, Ideal(R, {P(R, "x"), P(R, "x*y")}));
    FAIL("expected ZeroCenter");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroCenter);
  }
}

TEST_CASE("pruning drops redundant generators in canonical order") {
  auto A = Chart::affine({"x", "y"});
  auto g = prune_generators(A, {A->parse("y"), A->parse("x*y + x"), A->parse("2*x"), A->parse("x")});
  REQUIRE(g.size() == 2);
  CHECK(g[0].to_string() == "x");
  CHECK(g[1].to_string() == "y");
}

TEST_CASE("determinantal tower of diag(x, y)") {
  auto A = Chart::affine({"x", "y"});
  MatrixHom phi(A, 2, 2, {"x", "0", "0", "y"});
  auto t = determinantal_tower(phi);
  CHECK(t.tower.steps.size() == 1);
  auto leaves = t.tower.leaves();
  REQUIRE(leaves.size() == 2);
  REQUIRE(t.certs.size() == 2);
  const auto& leaf = t.tower.nodes[leaves[0]];
  auto pulled = pullback_hom(leaf.from_root, phi);
  CHECK(pulled.matrix() == MatrixHom(leaf.chart, 2, 2, {"x", "0", "0", "x*y_1"}).matrix());
  CHECK(leaf.chart->principal_generator(minors(pulled, 1)) == leaf.chart->parse("x"));
  CHECK(leaf.chart->principal_generator(minors(pulled, 2)) == leaf.chart->parse("x^2*y_1"));
  for (const auto& lc : t.certs) {
    auto check = verify_cert(pullback_hom(t.tower.nodes[lc.node].from_root, phi), lc.cert);
    CHECK_MESSAGE(check.ok(), check.detail);
  }
  auto maps = tower_leaf_maps(t.tower);
  REQUIRE(maps.size() == 2);
  CHECK(maps[0].images()[1] == maps[0].target()->parse("x*y_1"));
  CHECK(maps[1].images()[0] == maps[1].target()->parse("y*x_1"));
}

TEST_CASE("identity needs no blowup") {
  auto A = Chart::affine({"x", "y"});
  auto t = determinantal_tower(MatrixHom::identity(A, 3));
  CHECK(t.tower.steps.empty());
  CHECK(t.tower.leaves() == std::vector<std::size_t>{0});
  auto maps = tower_leaf_maps(t.tower);
  REQUIRE(maps.size() == 1);
  CHECK(maps[0].images() == RingMap::identity(A).images());
}

TEST_CASE("generic 2x2 matrix: one blowup, four leaves") {
  auto A = Chart::affine({"x", "y", "z", "w"});
  MatrixHom phi(A, 2, 2, {"x", "y", "z", "w"});
  auto t = determinantal_tower(phi);
  CHECK(t.tower.steps.size() == 1);
  auto leaves = t.tower.leaves();
  REQUIRE(leaves.size() == 4);
  std::size_t pick = 0;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const auto& names = t.tower.nodes[leaves[i]].chart->ring()->names();
    if (names.front() == "x") pick = i;
  }
  const auto& x_leaf = t.tower.nodes[leaves[pick]];
  auto pulled = pullback_hom(x_leaf.from_root, phi);
  CHECK(pulled.matrix() == MatrixHom(x_leaf.chart, 2, 2, {"x", "x*y_1", "x*z_1", "x*w_1"}).matrix());
  const auto& cert = t.certs[pick].cert;
  REQUIRE(t.certs[pick].node == leaves[pick]);
  REQUIRE(cert.diag.size() == 2);
  CHECK(cert.diag[0] == x_leaf.chart->parse("x"));
  auto ratio = x_leaf.chart->divide(cert.diag[1], x_leaf.chart->parse("x*w_1 - x*y_1*z_1"));
  REQUIRE(ratio);
  CHECK(x_leaf.chart->is_unit(*ratio));
}

TEST_CASE("depth-two tower composes maps along branches") {
  auto A = Chart::affine({"x", "y", "z"});
  MatrixHom phi(A, 3, 3, {"x", "0", "0", "0", "y", "0", "0", "0", "z"});
  auto t = determinantal_tower(phi);
  CHECK(t.tower.depth() == 2);
  for (auto leaf : t.tower.leaves()) {
    const auto& node = t.tower.nodes[leaf];
    RingMap stepwise = RingMap::identity(A);
    std::vector<std::size_t> path;
    for (std::size_t cur = leaf; cur != 0; cur = *t.tower.nodes[cur].parent) path.push_back(cur);
    for (auto it = path.rbegin(); it != path.rend(); ++it) stepwise = compose(t.tower.nodes[*it].from_parent, stepwise);
    CHECK(stepwise.images() == node.from_root.images());
    CHECK(t.tower.map_between(0, leaf).images() == node.from_root.images());
    Poly f = A->parse("x*y + z^2 - 3*x");
    Poly sequential = f;
    RingMap running = RingMap::identity(A);
    for (auto it = path.rbegin(); it != path.rend(); ++it) sequential = apply_map(t.tower.nodes[*it].from_parent, sequential);
    CHECK(sequential == apply_map(node.from_root, f));
  }
  CHECK_THROWS_AS(determinantal_tower(phi, TowerOptions{1, {}, {}, 0}), Error);
}

TEST_CASE("every leaf has principal determinantal ideals") {
  auto A = Chart::affine({"x", "y", "z"});
  std::vector<MatrixHom> cases{MatrixHom(A, 1, 3, {"x", "y", "z"}),
                               MatrixHom(A, 2, 2, {"x", "y", "y", "z"}),
                               MatrixHom(A, 2, 3, {"x", "y", "0", "0", "y", "z"})};
  for (const auto& phi : cases) {
    auto t = determinantal_tower(phi);
    const std::size_t m = image_rank(phi);
    for (const auto& lc : t.certs) {
      const auto& node = t.tower.nodes[lc.node];
      auto pulled = pullback_hom(node.from_root, phi);
      for (std::size_t r = 0; r < m; ++r) CHECK(node.chart->principal_generator(minors(pulled, r + 1)));
      CHECK(verify_cert(pulled, lc.cert).ok());
      CHECK(lc.cert.rank() == m);
    }
  }
}

TEST_CASE("tower construction is deterministic") {
  auto A = Chart::affine({"x", "y", "z", "w"});
  MatrixHom phi(A, 2, 2, {"x", "y", "z", "w"});
  auto a = determinantal_tower(phi);
  auto b = determinantal_tower(phi);
  auto ma = tower_leaf_maps(a.tower), mb = tower_leaf_maps(b.tower);
  REQUIRE(ma.size() == mb.size());
  for (std::size_t i = 0; i < ma.size(); ++i) CHECK(describe(ma[i]) == describe(mb[i]));
}
