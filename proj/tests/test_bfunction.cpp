#include "doctest.h"
#include "lbf/annihilator.hpp"
#include "lbf/bfunction.hpp"
#include "lbf/errors.hpp"
#include "support.hpp"

using namespace lbf;
using test::q;

namespace {

RootList roots(std::initializer_list<const char*> rs) {
  std::vector<Rational> v;
  for (const char* r : rs) v.push_back(q(r));
  return RootList(std::move(v));
}

}  // namespace

TEST_CASE("global b-functions of small examples") {
  CHECK(global_bfunction(test::poly("x", "x")) == roots({"-1"}));
  CHECK(global_bfunction(test::poly("x^2+y^2", "x,y")) == roots({"-1", "-1"}));
  CHECK(global_reduced_bfunction(test::poly("x^2+y^2", "x,y")) == roots({"-1"}));
  CHECK(global_bfunction(test::poly("x^3+y^2", "x,y")) == roots({"-7/6", "-1", "-5/6"}));
  CHECK(global_reduced_bfunction(test::poly("x*y", "x,y")) == roots({"-1"}));
  CHECK(global_bfunction(test::poly("x^2", "x")) == roots({"-1", "-1/2"}));
}

TEST_CASE("Poincaré polynomial and weighted homogeneous roots") {
  WeightSystem cusp(6, {2, 3});
  CHECK(poincare_polynomial(cusp) == UniPoly({1, 0, 1}));
  CHECK(wh_bfunction_roots(cusp) == roots({"-7/6", "-5/6"}));
  WeightSystem e18(30, {10, 3});
  CHECK(poincare_polynomial(e18).evaluate(1) == 18);
  RootList r = wh_bfunction_roots(e18);
  CHECK(r.size() == 18);
  CHECK(r.contains(q("-44/30")));
  CHECK(r.contains(q("-47/30")));
}

TEST_CASE("candidate roots") {
  RootList c = candidate_roots(roots({"-5/6", "-7/6"}), 2, 2);
  CHECK(c == roots({"-7/6", "-5/6", "-1/6"}));
  CHECK(candidate_roots(roots({"-5/6"}), 2, 0) == roots({"-5/6"}));
}

TEST_CASE("root certification on the cusp") {
  MultiPoly f = test::poly("x^3+y^2", "x,y");
  auto ring = make_pbw_ring(f.vars());
  auto ann = ann_fs(ring, f);
  RootCertificate a = certify_root(ann, f, q("-5/6"));
  CHECK(a.is_factor);
  CHECK(a.origin_in_support);
  RootCertificate b = certify_root(ann, f, q("-1/2"));
  CHECK(!b.is_factor);
  CHECK(b.basis.is_unit());
  CHECK_THROWS_AS(certify_root(ann, f, q("-5/6"), MonomialOrder::degrevlex(ring->nvars())), PreconditionError);
}

TEST_CASE("local roots drop factors supported away from the origin") {
  // a cusp at the origin and a node at (0,1)
  MultiPoly f = test::poly("x^2+y^3*(y-1)^2", "x,y");
  RootList global = global_reduced_bfunction(f);
  CHECK(global.as_set() == roots({"-7/6", "-1", "-5/6"}));
  CHECK(local_bfunction_via_support(f) == roots({"-7/6", "-5/6"}));
}

TEST_CASE("local b-function of a semi-weighted homogeneous germ") {
  MultiPoly f = test::poly("x^3+y^2", "x,y");
  LocalBFResult r = local_bfunction_swh(f, WeightSystem(6, {2, 3}));
  CHECK(r.roots == roots({"-7/6", "-5/6"}));
  CHECK(r.milnor == 2);
  CHECK(r.dims.at(q("-7/6")) == 1);
  CHECK(r.dims.at(q("-5/6")) == 1);

  LocalBFResult e = local_bfunction_swh(test::poly("x^4+y^5+x^2*y^3", "x,y"), WeightSystem(20, {5, 4}));
  std::size_t total = 0;
  for (const auto& [g, d] : e.dims) total += d;
  CHECK(total == e.milnor);
  CHECK(e.milnor == 12);
  CHECK(e.roots.is_set());
  RootList global = global_reduced_bfunction(test::poly("x^4+y^5+x^2*y^3", "x,y"));
  for (const auto& g : e.roots.roots) CHECK(global.contains(g));
}

TEST_CASE("preconditions of the local drivers") {
  CHECK_THROWS_AS(local_bfunction_swh(test::poly("x^3+y^2+1", "x,y"), WeightSystem(6, {2, 3})), PreconditionError);
  CHECK_THROWS_AS(local_bfunction_swh(test::poly("x^3+x*y", "x,y"), WeightSystem(6, {2, 3})), PreconditionError);
  CHECK_THROWS_AS(local_bfunction_via_support(test::poly("x+1", "x")), PreconditionError);
}
