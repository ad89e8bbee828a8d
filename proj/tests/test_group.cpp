#include <doctest.h>

#include "gqcov/graph_search.hpp"
#include "gqcov/group.hpp"

using namespace gqcov;

TEST_SUITE("group") {
  TEST_CASE("multiplication acts on the right") {
    Perm g = {1, 2, 0};
    Perm h = {1, 0, 2};
    // image of i under g then h
    CHECK(perm_mul(g, h) == Perm{0, 2, 1});
    CHECK(is_identity(perm_mul(g, perm_inv(g))));
    CHECK(gqcov::is_permutation(g));
    CHECK_FALSE(gqcov::is_permutation(Perm{0, 0, 1}));
  }

  TEST_CASE("orders, membership and stabilizers") {
    PermutationGroup s4(4, {Perm{1, 2, 3, 0}, Perm{1, 0, 2, 3}});
    CHECK(s4.order() == 24);
    CHECK(s4.contains(Perm{3, 2, 1, 0}));
    std::vector<int> set = {0, 1};
    CHECK(s4.setwise_stabilizer(set).order() == 4);
    PermutationGroup c4(4, {Perm{1, 2, 3, 0}});
    CHECK(c4.order() == 4);
    CHECK_FALSE(c4.contains(Perm{1, 0, 2, 3}));
    CHECK_FALSE(c4.equals(s4));
    CHECK(c4.orbits().size() == 1);
  }

  TEST_CASE("graph search on a 5-cycle") {
    ColoredGraph c5(5);
    for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
    c5.finalize();
    auto aut = graph_automorphisms(c5, 10000);
    CHECK(aut.order == 10);

    ColoredGraph other(5);
    for (int i = 0; i < 5; ++i) other.add_edge(i, (i + 2) % 5);
    other.finalize();
    IsomorphismSearch search(c5, other, 10000);
    CHECK(search.find_all().size() == 10);
  }
}
