#include "doctest.h"
#include "lbf/annihilator.hpp"
#include "lbf/errors.hpp"
#include "support.hpp"

using namespace lbf;

TEST_CASE("annihilator generators kill f^s") {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"x", "x"}, {"x*y", "x,y"}, {"x^2+y^2", "x,y"}, {"x^3+y^2", "x,y"}, {"x^3+y^4", "x,y"}, {"x^2+y^3+x*y^2", "x,y"}};
  for (const auto& [text, vars] : cases) {
    CAPTURE(text);
    MultiPoly f = test::poly(text, vars);
    auto ring = make_pbw_ring(f.vars());
    auto ann = ann_fs(ring, f);
    REQUIRE(!ann.empty());
    for (const auto& g : ann) {
      CHECK(g.in_Ds());
      CHECK(apply_to_fs(g, f).numerator.is_zero());
    }
  }
}

TEST_CASE("the Euler operator lies in Ann of a weighted homogeneous polynomial") {
  MultiPoly f = test::poly("x^3+y^2", "x,y");
  auto ring = make_pbw_ring(f.vars());
  MonomialOrder ord;
  auto ann = ann_fs(ring, f, {}, &ord);
  PBWOperator euler = test::op(ring, "2*x*dx+3*y*dy-6*s");
  CHECK(left_reduce(euler, ann, ord).is_zero());
  // so is the Hamiltonian vector field
  CHECK(left_reduce(test::op(ring, "2*y*dx-3*x^2*dy"), ann, ord).is_zero());
}

TEST_CASE("Briançon–Maisonobe generators") {
  MultiPoly f = test::poly("x^2+y^2", "x,y");
  auto ring = make_pbw_ring(f.vars());
  auto B = bm_ideal(ring, f);
  REQUIRE(B.size() == 3);
  CHECK(B[0] == test::op(ring, "x^2*dt+y^2*dt+s"));
  CHECK(B[1] == test::op(ring, "dx+2*x*dt"));
  CHECK(B[2] == test::op(ring, "dy+2*y*dt"));
  MonomialOrder ord = annihilator_order(*ring);
  CHECK(ord.eliminates(std::vector<std::size_t>{ring->dt()}));
}

TEST_CASE("preconditions") {
  auto ring = make_pbw_ring({"x", "y"});
  CHECK_THROWS_AS(ann_fs(ring, MultiPoly({"x", "y"})), PreconditionError);
  CHECK_THROWS_AS(ann_fs(ring, test::poly("3", "x,y")), PreconditionError);
  CHECK_THROWS_AS(ann_fs(ring, test::poly("x+z", "x,z")), StructuralError);
}
