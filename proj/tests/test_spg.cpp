#include <doctest.h>

#include "gqcov/constructions.hpp"
#include "gqcov/spg.hpp"

using namespace gqcov;

TEST_SUITE("spg") {
  TEST_CASE("derived geometry parameters") {
    auto d = build_derived_pair(build_Q5_with_Q4(3).embedding);
    auto r = verify_spg(*d.E);
    REQUIRE(r.ok());
    CHECK(*r.params == SPGParameters{2, 9, 2, 12});
    CHECK(predicted_spg(d.order, d.sub_order, d.census.theta) == *r.params);
  }

  TEST_CASE("vacuous mu adopts the expected value") {
    auto d = build_derived_pair(build_Q5_with_Q4(2).embedding);
    auto r = verify_spg(*d.E, SPGParameters{1, 4, 2, 4});
    CHECK(r.ok());
    CHECK(r.mu_vacuous);
    CHECK_FALSE(verify_spg(*d.E, SPGParameters{1, 4, 3, 4}).ok());
  }

  TEST_CASE("a generalized quadrangle is an spg with alpha 1") {
    auto r = verify_spg(build_W(3));
    REQUIRE(r.ok());
    CHECK(*r.params == SPGParameters{3, 3, 1, 4});
  }

  TEST_CASE("failures carry a witness") {
    auto g = IncidenceStructure::create("mixed", 5, {{0, 1, 2}, {3, 4}});
    auto r = verify_spg(g);
    CHECK_FALSE(r.ok());
    CHECK(r.failure == "line size");
    CHECK_FALSE(r.witness.empty());
  }

  TEST_CASE("hypothesis gate") {
    auto h = build_H4_with_H3(2);
    CHECK(hypothesis_gate(h.embedding, theta_census(h.embedding)).passes);
    auto g = build_Q5_with_Q3(3);
    auto gate = hypothesis_gate(g.embedding, theta_census(g.embedding));
    CHECK_FALSE(gate.passes);
    CHECK_FALSE(gate.t_prime_not_one);
  }

  TEST_CASE("witness lines give the same rosette") {
    auto d = build_derived_pair(build_H4_with_H3(2).embedding);
    auto r = witness_line_independence(d);
    CHECK(r.independent);
    CHECK(r.witness_lines > r.rosettes);
  }
}
