#include <doctest.h>

#include "gqcov/errors.hpp"
#include "gqcov/field.hpp"

using namespace gqcov;

TEST_SUITE("field") {
  TEST_CASE("small fields satisfy the axioms") {
    for (int q : {2, 3, 4, 5, 7, 8, 9}) {
      auto f = FiniteField::of_order(q);
      CHECK(f.order() == q);
      CHECK(f.verify_axioms_exhaustive());
    }
  }

  TEST_CASE("inverses and Frobenius") {
    auto f = FiniteField::of_order(9);
    for (int a = 1; a < 9; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK_THROWS_AS(f.inv(0), GeometryError);
    for (int a = 0; a < 9; ++a) CHECK(f.frobenius(f.frobenius(a, 1), 1) == a);
  }

  TEST_CASE("squares in odd order fields") {
    auto f = FiniteField::of_order(9);
    int squares = 0;
    for (int a = 1; a < 9; ++a) squares += f.is_square(a);
    CHECK(squares == 4);
    CHECK_FALSE(f.is_square(f.first_nonsquare()));
  }

  TEST_CASE("projective points and rank") {
    auto f = FiniteField::of_order(3);
    CHECK(projective_points(f, 3).size() == 13);
    std::vector<std::vector<int>> rows = {{1, 0, 1}, {0, 1, 1}, {1, 1, 2}};
    CHECK(vector_rank(f, rows) == 2);
    CHECK(normalize_projective(f, {0, 2, 1}) == std::vector<int>{0, 1, 2});
  }

  TEST_CASE("unsupported orders are rejected") { CHECK_THROWS_AS(FiniteField::of_order(6), GeometryError); }
}
