#include "doctest.h"
#include "lbf/annihilator.hpp"
#include "lbf/bfunction.hpp"
#include "lbf/cohomology.hpp"
#include "lbf/errors.hpp"
#include "lbf/linalg.hpp"
#include "support.hpp"

using namespace lbf;
using test::q;

namespace {

bool lowering_closed(const EchelonBasis& B, std::size_t nvars) {
  // x_i * psi must lie in the span; test by echelon insertion over the union
  std::map<Monomial, std::size_t> cols;
  auto vec = [&](const CohomClass& c) {
    SparseVec v;
    for (const auto& [m, r] : c.terms()) v.emplace_back(cols.try_emplace(m, cols.size()).first->second, r);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  };
  std::vector<SparseVec> basis;
  for (const auto& c : B.classes) basis.push_back(vec(c));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i));
  for (const auto& c : B.classes)
    for (std::size_t i = 0; i < nvars; ++i) {
      CohomClass low = act_polynomial(MultiPoly::variable(names, i), c);
      if (low.is_zero()) continue;
      SparseVec lv = vec(low);
      SparseEchelon e(cols.size() + 1);
      for (const auto& b : basis) e.insert(b);
      if (e.insert(lv)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("polynomial and operator actions on classes") {
  CohomClass psi = CohomClass::monomial(Monomial{2, 1});
  CHECK(act_polynomial(test::poly("x", "x,y"), psi) == CohomClass::monomial(Monomial{1, 1}));
  CHECK(act_polynomial(test::poly("x^3", "x,y"), psi).is_zero());
  auto ring = make_pbw_ring({"x", "y"});
  // dx [1/x^3 y^2] = -3 [1/x^4 y^2]
  CHECK(act_operator(test::op(ring, "dx"), psi) == CohomClass::monomial(Monomial{3, 1}, -3));
  CHECK(act_operator(test::op(ring, "x*dx"), psi) == CohomClass::monomial(Monomial{2, 1}, -3));
  CHECK_THROWS(act_operator(test::op(ring, "s"), psi));
  CHECK(psi.to_string({"xi", "eta"}) == "xi^2*eta");
}

TEST_CASE("H_F0 for Jacobian ideals gives the Milnor number") {
  CHECK(milnor_number(test::poly("x^3+y^2", "x,y")) == 2);
  CHECK(milnor_number(test::poly("x^4+y^5", "x,y")) == 12);
  CHECK(milnor_number(test::poly("x^3+y^10+x*y^7", "x,y")) == 18);
  CHECK(milnor_number(test::poly("x^2+y^2+z^2", "x,y,z")) == 1);
  CHECK_THROWS_AS(milnor_number(test::poly("x+y^2", "x,y")), PreconditionError);
}

TEST_CASE("solution bases are echelon and closed under lowering") {
  std::vector<std::vector<MultiPoly>> systems{
      {test::poly("3*x^2", "x,y"), test::poly("2*y", "x,y")},
      {test::poly("4*x^3+2*x*y^3", "x,y"), test::poly("5*y^4+3*x^2*y^2", "x,y")},
      {test::poly("x*y", "x,y"), test::poly("x^2-y^3", "x,y")}};
  for (const auto& F : systems) {
    EchelonBasis B = solve_H_F0(F);
    auto heads = B.heads();
    for (std::size_t i = 1; i < heads.size(); ++i) CHECK(B.order.greater(heads[i], heads[i - 1]));
    CHECK(lowering_closed(B, 2));
    for (const auto& c : B.classes)
      for (const auto& h : F) CHECK(act_polynomial(h, c).is_zero());
  }
}

TEST_CASE("degree cap") {
  CohomologyOptions o;
  o.degree_cap = 2;
  CHECK_THROWS_AS(milnor_number(test::poly("x^5+y^5", "x,y"), o), ResourceError);
}

TEST_CASE("solution spaces of the cusp") {
  MultiPoly f = test::poly("x^3+y^2", "x,y");
  auto ring = make_pbw_ring(f.vars());
  auto ann = ann_fs(ring, f);
  std::size_t total = 0;
  for (const char* g : {"-5/6", "-7/6"}) {
    RootCertificate cert = certify_root(ann, f, q(g));
    EchelonBasis B = cohomology_solution_space(f, q(g), cert);
    CHECK(B.dimension() == 1);
    total += B.dimension();
    for (const auto& h : cert.basis.generators) {
      PBWOperator p = h.substitute_s(q(g));
      if (p.is_zero()) continue;
      for (const auto& c : B.classes) CHECK(act_operator(p, c).is_zero());
    }
  }
  CHECK(total == 2);
  RootCertificate bad = certify_root(ann, f, q("-1/2"));
  CHECK_THROWS_AS(cohomology_solution_space(f, q("-1/2"), bad), PreconditionError);
}
