#include "doctest.h"
#include "lbf/bfunction.hpp"
#include "lbf/catalog.hpp"
#include "lbf/errors.hpp"
#include "support.hpp"

using namespace lbf;
using test::q;

TEST_CASE("the catalog loads with twenty entries") {
  const auto& cat = load_catalog();
  CHECK(cat.size() == 20);
  for (const auto& e : cat) {
    CAPTURE(e.name);
    long subscript = std::stol(e.name.substr(1));
    CHECK(poincare_polynomial(e.weights).evaluate(1) == subscript);
    CHECK(wh_crosscheck(e));
  }
}

TEST_CASE("specialization") {
  const CatalogEntry& u16 = find_entry("U16");
  std::vector<Rational> pt{1, q("-27/256")};
  MultiPoly f = specialize(u16, pt);
  CHECK(f.vars() == u16.vars);
  CHECK(classify_swh(f, u16.weights).ok);
  CHECK_THROWS_AS(specialize(u16, std::vector<Rational>{1}), StructuralError);
  CHECK_THROWS_AS(find_entry("X99"), PreconditionError);
}

TEST_CASE("stratum membership is a set difference") {
  const CatalogEntry& e = find_entry("S16");
  REQUIRE(e.strata.size() == 3);
  const StratumSpec& mid = e.strata[1];
  CHECK(stratum_member(std::vector<Rational>{0, 1}, mid, e.constraint));
  CHECK(!stratum_member(std::vector<Rational>{0, 0}, mid, e.constraint));
  CHECK(!stratum_member(std::vector<Rational>{1, 1}, mid, e.constraint));
  CHECK(stratum_member(std::vector<Rational>{0, 0}, e.strata[2], e.constraint));
}

TEST_CASE("the flagged transcription keeps both values") {
  const CatalogEntry& e = find_entry("E19");
  REQUIRE(e.bst_printed);
  CHECK(e.bst_printed->contains(q("-18/26")));
  CHECK(!e.bst.contains(q("-18/26")));
  CHECK(e.bst.contains(q("-18/21")));
  CHECK(!e.notes.empty());
}

TEST_CASE("catalog parser diagnostics") {
  CHECK_THROWS_AS(parse_catalog("vars x\n"), ParseError);
  CHECK_THROWS_AS(parse_catalog("entry A\nvars x,y\n"), ParseError);
  CHECK_THROWS_AS(parse_catalog("entry A\nbogus 1\nend\n"), ParseError);
  try {
    parse_catalog("entry A\nvars x,y\nparams u\ntemplate x^2+\nend\n");
    FAIL("bad template accepted");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("catalog line 4") != std::string::npos);
  }
}

TEST_CASE("verification of a two-variable entry") {
  const CatalogEntry& e = find_entry("W15");
  VerifyOptions o;
  o.strata = {e.strata[0].label};
  VerificationReport r = verify_entry(e, o);
  REQUIRE(r.samples.size() == 1);
  CHECK(r.samples[0].status == SampleStatus::Pass);
  CHECK(r.passed());
  CHECK_THROWS_AS(verify_entry(e, VerifyOptions{{"nope"}}), PreconditionError);
}
