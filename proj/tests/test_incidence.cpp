#include <doctest.h>

#include "gqcov/constructions.hpp"
#include "gqcov/errors.hpp"
#include "gqcov/incidence.hpp"

using namespace gqcov;

TEST_SUITE("incidence") {
  TEST_CASE("create validates and canonicalizes") {
    auto g = IncidenceStructure::create("t", 4, {{2, 1}, {0, 3}});
    CHECK(g.line_count() == 2);
    CHECK(std::vector<int>(g.points_on(0).begin(), g.points_on(0).end()) == std::vector<int>{0, 3});
    CHECK(g.incident(1, 1));
    CHECK(g.line_through(1, 2) == 1);
    CHECK_FALSE(g.line_through(0, 1).has_value());
    CHECK_THROWS_AS(IncidenceStructure::create("bad", 3, {{0, 0}}), GeometryError);
    CHECK_THROWS_AS(IncidenceStructure::create("bad", 3, {{0, 5}}), GeometryError);
    CHECK_THROWS_AS(IncidenceStructure::create("bad", 3, {{0, 1}, {1, 0}}), GeometryError);
  }

  TEST_CASE("axiom checker") {
    auto grid = build_grid(2);
    auto c = verify_gq_axioms(grid);
    REQUIRE(c.ok());
    CHECK(*c.order == GQOrder{2, 1});

    auto triangle = IncidenceStructure::create("tri", 3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(has_triangle(triangle).has_value());
    CHECK_FALSE(verify_gq_axioms(triangle).ok());
    CHECK_FALSE(has_triangle(grid).has_value());
  }

  TEST_CASE("perp and closure in W(2)") {
    auto w = build_W(2);
    CHECK(perp(w, 0).size() == 7);
    auto x = perp(w, 0);
    int y = -1;
    for (int p = 0; p < w.point_count(); ++p)
      if (!w.collinear(0, p)) y = p;
    REQUIRE(y >= 0);
    std::vector<int> pair = {0, y};
    CHECK(perp_set(w, pair).size() == 3);
    CHECK_FALSE(biperp(w, pair).empty());
    CHECK(is_connected(w));
  }

  TEST_CASE("embedding flags and hyperplane kind") {
    auto p = build_Q5_with_Q4(2);
    const auto& f = p.embedding.flags();
    CHECK(f.is_full);
    CHECK(f.is_geometric_hyperplane);
    auto kind = classify_hyperplane(p.embedding);
    CHECK(kind.kind == HyperplaneKind::Kind::FullSubGQ);
    CHECK(kind.sub_order == GQOrder{2, 2});
    REQUIRE(p.embedding.sub_order());
    CHECK(*p.embedding.sub_order() == GQOrder{2, 2});
  }

  TEST_CASE("dual of the grid is a grid") {
    auto d = build_grid(3).dual("dual");
    auto c = verify_gq_axioms(d);
    REQUIRE(c.ok());
    CHECK(*c.order == GQOrder{1, 3});
  }
}
