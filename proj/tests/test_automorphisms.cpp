#include <doctest.h>

#include "gqcov/automorphisms.hpp"
#include "gqcov/constructions.hpp"
#include "gqcov/errors.hpp"

using namespace gqcov;

TEST_SUITE("automorphisms") {
  TEST_CASE("group orders") {
    CHECK(automorphism_group(build_grid(2)).order() == 72);
    CHECK(automorphism_group(build_grid(3)).order() == 1152);
    CHECK(automorphism_group(build_Q4(2)).order() == 720);
    CHECK(automorphism_group(build_W(3)).order() == 51840);
  }

  TEST_CASE("generators are collineations") {
    auto g = build_Q4(3);
    const auto group = automorphism_group(g);
    for (const auto& p : group.generators()) CHECK(is_collineation(g, p));
  }

  TEST_CASE("stabilizer, kernel and induced action") {
    auto p = build_Q5_with_Q4(2);
    auto stab = subgeometry_stabilizer(p.embedding);
    auto kernel = elementwise_kernel(p.embedding);
    CHECK(stab.order() == 1440);
    CHECK(kernel.order() == 2);
    auto induced = induced_on_sub(stab, p.embedding, kernel);
    CHECK(induced.image.order() == 720);
    CHECK(induced.faithful_modulo_kernel);
  }

  TEST_CASE("extensions of the identity") {
    auto p = build_Q5_with_Q4(2);
    auto rep = extend_automorphism(p.embedding, identity_perm(15), ExtensionMode::FindAll);
    CHECK(rep.extensions.size() == 2);
    CHECK(rep.kernel_order == 2);
    CHECK(rep.bijection_with_kernel);
    CHECK_THROWS_AS(extend_automorphism(p.embedding, Perm{1, 0, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14},
                                        ExtensionMode::FindOne),
                    GeometryError);
  }

  TEST_CASE("Aut(E) two ways and higher decomposition") {
    auto d = build_derived_pair(build_Q5_with_Q4(2).embedding);
    auto two = aut_E_two_ways(d);
    CHECK(two.equal);
    CHECK(two.order_direct == 720);
    auto h = higher_decomposition_check(d, d.pi_morphism());
    CHECK(h.verdict);
    CHECK(h.alpha_tilde_verified);
  }

  TEST_CASE("two-ways requires the hypothesis") {
    auto d = build_derived_pair(build_Q5_with_Q3(2).embedding);
    CHECK_THROWS_AS(aut_E_two_ways(d), HypothesisError);
    auto r = aut_E_two_ways(d, false);
    CHECK_FALSE(r.hypothesis);
  }
}
