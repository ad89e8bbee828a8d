#include <doctest.h>

#include "gqcov/constructions.hpp"
#include "gqcov/errors.hpp"

using namespace gqcov;

TEST_SUITE("constructions") {
  TEST_CASE("classical sizes and orders") {
    auto q4 = build_Q4(3);
    CHECK(q4.point_count() == 40);
    CHECK(*verify_gq_axioms(q4).order == GQOrder{3, 3});
    auto w = build_W(3);
    CHECK(w.point_count() == 40);

    auto q5 = build_Q5_with_Q4(2);
    CHECK(q5.ambient->point_count() == 27);
    CHECK(q5.ambient->line_count() == 45);
    CHECK(q5.embedding.points().size() == 15);

    auto h = build_H4_with_H3(2);
    CHECK(h.ambient->point_count() == 165);
    CHECK(*h.embedding.sub_order() == GQOrder{4, 2});
  }

  TEST_CASE("coordinates support planarity tests") {
    auto p = build_Q5_with_Q4(2);
    const auto& g = *p.ambient;
    auto line = g.points_on(0);
    std::vector<int> pts(line.begin(), line.end());
    CHECK(points_coplanar(g, pts));
    CHECK(coordinate_rank(g, pts) == 2);
    CHECK_THROWS_AS(points_coplanar(build_grid(2), pts), GeometryError);
  }

  TEST_CASE("Kantor-Knuth q=9") {
    auto kk = build_kantor_knuth(QClanSpec{});
    CHECK(kk.geometry->point_count() == 7300);
    CHECK(kk.geometry->line_count() == 59860);
    CHECK_FALSE(kk.classical);
    CHECK(kk.line_infinity >= 0);
  }

  TEST_CASE("q-clan condition is enforced") {
    QClanSpec spec;
    spec.q = 9;
    spec.m = 1;  // a square
    CHECK_THROWS_AS(build_kantor_knuth(spec), GeometryError);
  }
}
