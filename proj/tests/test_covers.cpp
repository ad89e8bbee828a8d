#include <doctest.h>

#include "gqcov/automorphisms.hpp"
#include "gqcov/constructions.hpp"
#include "gqcov/covers.hpp"
#include "gqcov/errors.hpp"

using namespace gqcov;

TEST_SUITE("covers") {
  TEST_CASE("pi factorizes as the identity") {
    for (int q : {2, 3}) {
      auto d = build_derived_pair(build_Q5_with_Q4(q).embedding);
      auto f = factorize_lower(d, d.pi_morphism());
      CHECK(f.alpha == identity_morphism(d.E));
      CHECK(f.orientation == ZetaOrientation::Forward);
    }
  }

  TEST_CASE("enumeration at q=2 matches Aut(E)") {
    auto d = build_derived_pair(build_Q5_with_Q4(2).embedding);
    auto en = enumerate_covers(d.A, d.E);
    CHECK(en.covers.size() == 720);
    CHECK(automorphism_group(*d.E).order() == 720);
    CHECK_THROWS_AS(enumerate_covers(d.A, d.E, 10), BudgetExceeded);
  }

  TEST_CASE("connecting automorphism") {
    auto d = build_derived_pair(build_Q5_with_Q4(3).embedding);
    auto aut = automorphism_group(*d.E);
    auto gamma = compose(as_morphism(d.E, aut.generators().front()), d.pi_morphism());
    auto r = verify_initial_object(d, d.pi_morphism(), gamma);
    CHECK(r.commutes);
    CHECK(r.unique);
    CHECK(r.delta == as_morphism(d.E, aut.generators().front()));
  }

  TEST_CASE("reconstruction and identification of the canonical cover") {
    auto d = build_derived_pair(build_Q5_with_Q4(2).embedding);
    auto rec = reconstruct_chi(d, d.pi_morphism());
    REQUIRE(rec.ok());
    CHECK(rec.value->chi->point_count() == 27);
    CHECK(rec.value->order == GQOrder{2, 4});
    auto id = identify_chi_prime(*rec.value, d);
    CHECK(id.ok);
  }

  TEST_CASE("non-theta-covers are reported") {
    auto d = build_derived_pair(build_Q5_with_Q4(2).embedding);
    auto bad = d.pi_morphism();
    bad.point_map[0] = bad.point_map[1] == bad.point_map[0] ? (bad.point_map[0] + 1) % 6 : bad.point_map[1];
    auto rec = reconstruct_chi(d, bad);
    CHECK_FALSE(rec.ok());
    CHECK(rec.failure == ChiFailure::NotThetaCover);
  }

  TEST_CASE("condition (C) sampling is seeded") {
    auto d = build_derived_pair(build_Q5_with_Q4(2).embedding);
    auto a = condition_c_instances(d, 10, 7);
    auto b = condition_c_instances(d, 10, 7);
    REQUIRE(a.single.size() == 10);
    REQUIRE(a.multi.size() == 10);
    CHECK(a.attempts == b.attempts);
    for (std::size_t i = 0; i < a.single.size(); ++i) CHECK(a.single[i].W == b.single[i].W);
    for (const auto& inst : a.single) CHECK(condition_c_planarity(d, inst));
    for (const auto& inst : a.multi) CHECK_FALSE(condition_c_planarity(d, inst));
  }
}
