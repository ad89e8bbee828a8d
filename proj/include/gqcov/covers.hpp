#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gqcov/incidence.hpp"
#include "gqcov/morphism.hpp"
#include "gqcov/subtension.hpp"

namespace gqcov {

/// How alpha acts on ovoid point sets relative to zeta.
enum class ZetaOrientation { Forward, Inverse };

struct FactorizationResult {
  GeometryMorphism alpha;  // automorphism of E with gamma = alpha o pi
  /// Permutation of the subquadrangle's points, in sub() indices.
  std::vector<int> zeta;
  std::vector<int> zeta_lines;
  ZetaOrientation orientation = ZetaOrientation::Forward;
};

/// Factorizes a cover A -> E of a hyperplane pair through pi. Throws
/// HypothesisError on an unsuitable pair or a non-cover, ConsistencyViolation
/// if a fiber is not mapped consistently.
FactorizationResult factorize_lower(const DerivedPair& pair, const GeometryMorphism& gamma);

struct CoverEnumeration {
  std::vector<CoverCertificate> covers;  // sorted by (point_map, line_map)
  long nodes = 0;
};

/// Every cover source -> target, by backtracking over point images in BFS
/// order. Throws BudgetExceeded past node_budget.
CoverEnumeration enumerate_covers(std::shared_ptr<const IncidenceStructure> source,
                                  std::shared_ptr<const IncidenceStructure> target,
                                  long node_budget = 10'000'000);

struct InitialObjectReport {
  GeometryMorphism delta;  // delta o gamma = gamma2
  bool commutes = false;
  /// The map forced by delta(gamma(y)) = gamma2(y) is well defined and equals delta.
  bool unique = false;
};

/// Connecting automorphism from precomputed factorizations.
InitialObjectReport connecting_automorphism(const GeometryMorphism& gamma, const FactorizationResult& f,
                                            const GeometryMorphism& gamma2, const FactorizationResult& f2);
InitialObjectReport verify_initial_object(const DerivedPair& pair, const GeometryMorphism& gamma,
                                          const GeometryMorphism& gamma2);

enum class ChiFailure {
  None,
  NotThetaCover,
  TriangleInInput,
  StarNotDisjoint,
  WrongCounts,
  TriangleInChi,
  AxiomFailure,
  SigmaNotIsomorphism,
  DerivedMismatch
};

struct ChiReconstruction {
  std::shared_ptr<const IncidenceStructure> source;  // the cover's source C
  std::shared_ptr<const IncidenceStructure> chi;
  SubGeometryEmbedding chi_prime;
  /// chi_prime.sub() point i maps to sub() point sigma_star[i] of the subquadrangle.
  std::vector<int> sigma_star;
  /// For each subquadrangle point (sub() index), the cover-source lines forming x*.
  std::vector<std::vector<int>> star_lines;
  /// chi point index of x* for each subquadrangle point.
  std::vector<int> star_point;
  GQOrder order;
};

struct ChiResult {
  std::optional<ChiReconstruction> value;
  ChiFailure failure = ChiFailure::None;
  std::string witness;

  bool ok() const { return value.has_value(); }
};

/// Rebuilds a quadrangle from a theta-cover gamma: C -> E of a hyperplane pair.
ChiResult reconstruct_chi(const DerivedPair& pair, const GeometryMorphism& gamma);

struct Identification {
  bool ok = false;
  std::string witness;
  /// For each subquadrangle point x (sub() index): the common point x** of x*.
  std::vector<int> double_star;
};

/// Requires gamma's source to be pair.A. Checks every x* meets the
/// subquadrangle in a single point and x -> x** is an automorphism of it.
Identification identify_chi_prime(const ChiReconstruction& rec, const DerivedPair& pair);

struct ConditionCInstance {
  int L = -1;                  // ambient line, outside the subquadrangle
  std::vector<int> M;          // ambient lines covering one rosette
  int x0 = -1;                 // common subquadrangle point of the M_i
  std::vector<int> x;          // chosen affine points x_1..x_alpha
  std::vector<int> N;          // N_0..N_alpha
  PointSet W;                  // subquadrangle points on the N_i
  bool overline = false;       // N_0 is a line of the subquadrangle
};

struct ConditionCSample {
  std::vector<ConditionCInstance> single;  // |M| = 1
  std::vector<ConditionCInstance> multi;   // |M| > 1
  long attempts = 0;
  long degenerate = 0;  // coincident N_i meets on L
};

/// Literal: any alpha affine points on the M_i with each M_i hit.
/// ProofImplied: additionally no x_i is collinear with the point L meets the
/// subquadrangle in, and the x_i subtend pairwise distinct ovoids.
enum class ConditionCReading { Literal, ProofImplied };

/// Seeded sampling of instances of each kind until `per_kind` of each are found
/// or `max_attempts` is reached.
ConditionCSample condition_c_instances(const DerivedPair& pair, int per_kind, std::uint64_t seed,
                                       ConditionCReading reading = ConditionCReading::Literal,
                                       long max_attempts = 200'000);

/// W lies in a plane of the ambient projective space.
bool condition_c_planarity(const DerivedPair& pair, const ConditionCInstance& inst);

}  // namespace gqcov
