#include <doctest.h>

#include "gqcov/constructions.hpp"
#include "gqcov/errors.hpp"
#include "gqcov/subtension.hpp"

using namespace gqcov;

namespace {
int first_external(const SubGeometryEmbedding& emb) {
  for (int x = 0; x < emb.ambient().point_count(); ++x)
    if (!emb.contains_point(x)) return x;
  return -1;
}
}  // namespace

TEST_SUITE("subtension") {
  TEST_CASE("subtended ovoids") {
    auto p = build_Q5_with_Q4(2);
    const int x = first_external(p.embedding);
    auto o = subtended_ovoid(p.embedding, x);
    CHECK(o.points.size() == 5);
    CHECK(o.subtenders.size() == 2);
    CHECK_THROWS_AS(subtended_ovoid(p.embedding, p.embedding.points().front()), GeometryError);
  }

  TEST_CASE("theta census of parabolic and hyperbolic sections") {
    auto c = theta_census(build_Q5_with_Q4(3).embedding);
    CHECK(c.uniform);
    CHECK(c.theta == 2);
    CHECK(c.external_points == 72);
    auto g = theta_census(build_Q4_with_Q3(4).embedding);
    CHECK(g.uniform);
    CHECK(g.theta == 1);
  }

  TEST_CASE("derived pair at q=2") {
    auto p = build_Q5_with_Q4(2);
    auto d = build_derived_pair(p.embedding);
    CHECK(d.hyperplane);
    CHECK(d.A->point_count() == 12);
    CHECK(d.E->point_count() == 6);
    REQUIRE(d.pi);
    CHECK(d.pi->theta == 2);
    CHECK(observation_pi_check(d).holds);
    CHECK(check_rosette_invariants(d).holds);
  }

  TEST_CASE("two external points meet in the predicted number of points") {
    auto p = build_Q5_with_Q4(3);
    auto census = theta_census(p.embedding);
    const int x = first_external(p.embedding);
    int checked = 0;
    for (int y = x + 1; y < p.ambient->point_count() && checked < 20; ++y) {
      if (p.embedding.contains_point(y)) continue;
      auto r = lemma72_check(p.embedding, census, x, y);
      if (!r.hypotheses_ok) continue;
      CHECK(r.holds);
      ++checked;
    }
    CHECK(checked > 0);
  }

  TEST_CASE("theta = s+1 special case") {
    auto r = special_case_theta_s_plus_1(build_Q5_with_Q3(2).embedding);
    CHECK(r.hypotheses_ok);
    CHECK(r.holds);
    CHECK(r.min_count == 2);
    CHECK(r.max_count == 2);
  }

  TEST_CASE("non-full subgeometries are rejected") {
    auto p = build_Q5_with_Q4(2);
    auto line = p.ambient->points_on(0);
    auto emb = induced_subgeometry(p.ambient, PointSet(line.begin(), line.end()), {});
    CHECK_THROWS_AS(theta_census(emb), HypothesisError);
  }
}
