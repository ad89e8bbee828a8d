#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gqcov/covers.hpp"
#include "gqcov/graph_search.hpp"
#include "gqcov/group.hpp"
#include "gqcov/incidence.hpp"
#include "gqcov/subtension.hpp"

namespace gqcov {

constexpr long kDefaultSearchBudget = 5'000'000;

/// Automorphisms of an incidence structure act on the combined domain:
/// points 0..P-1 followed by lines P..P+L-1.
ColoredGraph incidence_graph(const IncidenceStructure& g);

/// Split and join helpers for the combined domain.
std::vector<int> point_part(const Perm& p, int point_count);
std::vector<int> line_part(const Perm& p, int point_count);
/// Point permutation extended by its line action; nullopt if it is not a collineation.
std::optional<Perm> lift_point_map(const IncidenceStructure& g, const std::vector<int>& point_map);
GeometryMorphism as_morphism(std::shared_ptr<const IncidenceStructure> g, const Perm& p);
/// Preserves incidence in both directions.
bool is_collineation(const IncidenceStructure& g, const Perm& p);

PermutationGroup automorphism_group(const IncidenceStructure& g, long node_budget = kDefaultSearchBudget);

/// Aut(S) stabilizing the subquadrangle (as a set of points and of lines).
PermutationGroup subgeometry_stabilizer(const SubGeometryEmbedding& emb, long node_budget = kDefaultSearchBudget);

/// Aut(S) fixing every point and line of the subquadrangle.
PermutationGroup elementwise_kernel(const SubGeometryEmbedding& emb, long node_budget = kDefaultSearchBudget);

struct InducedAction {
  PermutationGroup image;
  std::uint64_t kernel_order = 0;  // |source| / |image|
  bool faithful_modulo_kernel = false;
  std::vector<int> rejected;  // generator indices whose image is not an automorphism of the target
};

/// Restriction of a stabilizer (ambient domain) to the subquadrangle, in sub() indices.
InducedAction induced_on_sub(const PermutationGroup& stabilizer, const SubGeometryEmbedding& emb,
                             const PermutationGroup& kernel);

/// Action on E of a subquadrangle automorphism (sub() point permutation), by
/// ovoid point sets. nullopt if some ovoid image is not an ovoid of E.
std::optional<Perm> ovoid_action(const DerivedPair& pair, const std::vector<int>& sub_point_perm);

/// Action on E of an ambient stabilizer.
InducedAction induced_on_E(const PermutationGroup& stabilizer, const DerivedPair& pair,
                           const PermutationGroup& kernel);

enum class ExtensionMode { FindOne, FindAll };

struct ExtensionReport {
  std::vector<int> base_automorphism;  // sub() point permutation
  std::vector<Perm> extensions;        // ambient combined-domain permutations, sorted
  std::uint64_t kernel_order = 0;      // filled in FindAll mode
  bool bijection_with_kernel = false;  // FindAll: extensions == kernel * e0, or both empty
  long nodes = 0;
};

/// Automorphisms of the ambient that restrict to phi on the subquadrangle.
/// Throws GeometryError if phi is not an automorphism of sub().
ExtensionReport extend_automorphism(const SubGeometryEmbedding& emb, const std::vector<int>& phi, ExtensionMode mode,
                                    long node_budget = kDefaultSearchBudget);

struct AutETwoWays {
  PermutationGroup direct;          // on Omega
  PermutationGroup via_stabilizer;  // on Omega
  std::uint64_t order_direct = 0;
  std::uint64_t order_via_stabilizer = 0;
  bool equal = false;
  bool hypothesis = false;  // 2-subtended (u,u^2) in (u,u)
};

/// Aut(E) directly versus the stabilizer of the ovoid set in Aut(S'). With
/// require_hypothesis, throws HypothesisError off the 2-subtended setting and
/// ConsistencyViolation on a mismatch; otherwise it only reports.
AutETwoWays aut_E_two_ways(const DerivedPair& pair, bool require_hypothesis = true,
                           long node_budget = kDefaultSearchBudget);

struct HigherDecompositionReport {
  bool verdict = false;
  int generators = 0;
  int induced = 0;
  std::string failure;
  /// For the supplied cover: an ambient automorphism with pi o alpha~ = gamma.
  std::optional<Perm> alpha_tilde;
  bool alpha_tilde_verified = false;
};

/// Every generator of Aut(E) is lifted through the factorization of alpha o pi
/// and extended to the ambient. With a cover, also constructs alpha~.
HigherDecompositionReport higher_decomposition_check(const DerivedPair& pair,
                                                     const std::optional<GeometryMorphism>& gamma = std::nullopt,
                                                     long node_budget = kDefaultSearchBudget);

}  // namespace gqcov
