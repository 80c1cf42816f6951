#include "doctest.h"
#include "lbf/annihilator.hpp"
#include "lbf/errors.hpp"
#include "lbf/groebner.hpp"
#include "support.hpp"

using namespace lbf;

namespace {

bool same_ideal_basis(std::vector<PBWOperator> a, std::vector<PBWOperator> b, const MonomialOrder& ord) {
  if (a.size() != b.size()) return false;
  auto normalize = [&](std::vector<PBWOperator>& v) {
    for (auto& g : v) g *= Rational(1) / leading_coefficient(g, ord);
    std::sort(v.begin(), v.end(), [&](const PBWOperator& p, const PBWOperator& q) {
      return ord.greater(leading_monomial(q, ord), leading_monomial(p, ord));
    });
  };
  normalize(a);
  normalize(b);
  return a == b;
}

}  // namespace

TEST_CASE("left reduction") {
  auto r = make_pbw_ring({"x"});
  MonomialOrder ord = MonomialOrder::degrevlex(r->nvars());
  std::vector<PBWOperator> G{test::op(r, "dx")};
  CHECK(left_reduce(test::op(r, "dx*x"), G, ord).is_zero());
  // dx * x = x*dx + 1, and x*dx reduces away
  CHECK(left_reduce(test::op(r, "x*dx+1"), G, ord) == PBWOperator::constant(r, 1));
}

TEST_CASE("a Weyl algebra basis is reduced and closed under S-pairs") {
  auto r = make_pbw_ring({"x", "y"});
  MonomialOrder ord = MonomialOrder::degrevlex(r->nvars());
  std::vector<PBWOperator> F{test::op(r, "x*dx+y*dy+1"), test::op(r, "x*dy-y*dx"), test::op(r, "x^2+y^2")};
  for (auto mode : {CoefficientMode::Exact, CoefficientMode::Modular}) {
    GroebnerOptions o;
    o.mode = mode;
    GroebnerBasis G = buchberger(F, ord, o);
    CHECK(G.reduced);
    CHECK(test::s_polynomials_vanish(G.generators, ord));
    for (const auto& f : F) CHECK(left_reduce(f, G.generators, ord).is_zero());
  }
}

TEST_CASE("exact, modular, traced and normal-strategy runs agree") {
  auto r = make_pbw_ring({"x", "y"});
  MultiPoly f = test::poly("x^3+y^2+x*y^2", "x,y");
  auto F = bm_ideal(r, f);
  MonomialOrder ord = annihilator_order(*r);
  std::vector<std::size_t> keep{0, 1, 2, 3, 4};
  GroebnerOptions exact;
  exact.mode = CoefficientMode::Exact;
  auto ref = eliminate(F, ord, keep, exact);
  GroebnerOptions plain;
  plain.trace = false;
  GroebnerOptions normal;
  normal.strategy = PairStrategy::Normal;
  CHECK(same_ideal_basis(ref, eliminate(F, ord, keep), ord));
  CHECK(same_ideal_basis(ref, eliminate(F, ord, keep, plain), ord));
  CHECK(same_ideal_basis(ref, eliminate(F, ord, keep, normal), ord));
}

TEST_CASE("unit ideal") {
  auto r = make_pbw_ring({"x"});
  MonomialOrder ord = MonomialOrder::deglex(r->nvars());
  std::vector<PBWOperator> F{test::op(r, "x"), test::op(r, "dx")};
  GroebnerBasis G = buchberger(F, ord);
  CHECK(G.is_unit());
}

TEST_CASE("elimination requires an eliminating order") {
  auto r = make_pbw_ring({"x"});
  auto F = bm_ideal(r, test::poly("x", "x"));
  std::vector<std::size_t> keep{0, 1, 2};
  CHECK_THROWS_AS(eliminate(F, MonomialOrder::degrevlex(r->nvars()), keep), PreconditionError);
  auto A = eliminate(F, annihilator_order(*r), keep);
  REQUIRE(A.size() == 1);
  CHECK(A[0].in_Ds());
}

TEST_CASE("resource limits surface as errors") {
  auto r = make_pbw_ring({"x", "y"});
  auto F = bm_ideal(r, test::poly("x^4+y^5+x^2*y^3", "x,y"));
  std::vector<std::size_t> keep{0, 1, 2, 3, 4};
  GroebnerOptions o;
  o.max_pairs = 3;
  CHECK_THROWS_AS(eliminate(F, annihilator_order(*r), keep, o), ResourceError);
  GroebnerOptions t;
  t.deadline = std::chrono::steady_clock::now();
  t.mode = CoefficientMode::Exact;
  CHECK_THROWS_AS(eliminate(F, annihilator_order(*r), keep, t), ResourceError);
  GroebnerOptions w;
  w.max_work = 100;
  CHECK_THROWS_AS(eliminate(F, annihilator_order(*r), keep, w), WorkLimitError);
  // ann_fs sets caps of its own
  MonomialOrder used;
  auto ann = ann_fs(r, test::poly("x^4+y^5+x^2*y^3", "x,y"), {}, &used);
  CHECK(test::s_polynomials_vanish(ann, used));
}

TEST_CASE("mixed rings are rejected") {
  auto a = make_pbw_ring({"x"});
  auto b = make_pbw_ring({"y"});
  std::vector<PBWOperator> F{test::op(a, "x"), test::op(b, "y")};
  CHECK_THROWS_AS(buchberger(F, MonomialOrder::deglex(4)), StructuralError);
}
