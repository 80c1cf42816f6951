#include "doctest.h"
#include "lbf/errors.hpp"
#include "lbf/pbw.hpp"
#include "support.hpp"

using namespace lbf;

namespace {

PBWRingPtr ring2() { return make_pbw_ring({"x", "y"}); }

}  // namespace

TEST_CASE("ring layout") {
  auto r = ring2();
  CHECK(r->nvars() == 6);
  CHECK(r->names() == std::vector<std::string>{"x", "y", "dx", "dy", "s", "dt"});
  CHECK(r->d(1) == 3);
  CHECK(r->dt() == 5);
}

TEST_CASE("defining relations") {
  auto r = ring2();
  auto x = PBWOperator::generator(r, r->x(0));
  auto y = PBWOperator::generator(r, r->x(1));
  auto dx = PBWOperator::generator(r, r->d(0));
  auto s = PBWOperator::generator(r, r->s());
  auto dt = PBWOperator::generator(r, r->dt());
  auto one = PBWOperator::constant(r, 1);
  CHECK(dx * x - x * dx == one);
  CHECK(dx * y == y * dx);
  CHECK(dt * s - s * dt == dt * Rational(-1));
  CHECK(s * x == x * s);
  CHECK(dt * x == x * dt);
  CHECK((dt * dt) * (s * s) == test::op(r, "s^2*dt^2-4*s*dt^2+4*dt^2"));
  CHECK((dx * dx) * (x * x) == test::op(r, "x^2*dx^2+4*x*dx+2"));
}

TEST_CASE("ring axioms on random operators") {
  auto r = ring2();
  test::Random rnd(3);
  for (int k = 0; k < 1000; ++k) {
    PBWOperator a = rnd.op(r, 3, 2), b = rnd.op(r, 3, 2), c = rnd.op(r, 2, 2);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
  }
}

TEST_CASE("subring predicates and substitution") {
  auto r = ring2();
  PBWOperator p = test::op(r, "x*dx+s");
  CHECK(p.in_Ds());
  CHECK(!p.in_D());
  CHECK(p.substitute_s(2).in_D());
  CHECK(test::op(r, "x^2+y").in_Cx());
  CHECK(test::op(r, "s^2-1").in_Cs());
  CHECK(test::op(r, "s^2-1").to_s_poly() == UniPoly({-1, 0, 1}));
  CHECK_THROWS(test::op(r, "dx").to_x_poly());
  CHECK_THROWS_AS(apply_to_fs(test::op(r, "dt"), test::poly("x", "x,y")), PreconditionError);
}

TEST_CASE("action on f^s") {
  auto r = ring2();
  MultiPoly f = test::poly("x^3+y^2", "x,y");
  // 2x dx + 3y dy - 6s kills f^s
  CHECK(apply_to_fs(test::op(r, "2*x*dx+3*y*dy-6*s"), f).numerator.is_zero());
  CHECK(!apply_to_fs(test::op(r, "x*dx"), f).numerator.is_zero());
  test::Random rnd(5);
  auto no_dt = [&](const PBWOperator& p) {
    PBWOperator out(r);
    for (const auto& [m, c] : p.terms())
      if (m[r->dt()] == 0) out.add_term(m, c);
    return out;
  };
  for (int k = 0; k < 50; ++k) {
    PBWOperator a = no_dt(rnd.op(r, 3, 1)), b = no_dt(rnd.op(r, 3, 1));
    FsImage lhs = apply_to_fs(a * b, f);
    FsImage rhs = apply_to_fs(a, apply_to_fs(b, f), f);
    CHECK(fs_difference(lhs, rhs, f).is_zero());
  }
}
