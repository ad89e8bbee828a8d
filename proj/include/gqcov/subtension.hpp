#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gqcov/incidence.hpp"
#include "gqcov/morphism.hpp"

namespace gqcov {

/// x^perp intersected with the subquadrangle; identified by its point set.
struct Ovoid {
  PointSet points;      // ambient point indices
  PointSet subtenders;  // external ambient points subtending it
};

struct Rosette {
  int base_point = -1;             // ambient index of the common point
  std::vector<int> ovoids;         // indices into DerivedPair::ovoids, ascending
  std::vector<int> witness_lines;  // ambient lines L with R_L equal to this rosette
};

struct ThetaCensus {
  std::map<int, int> counts;  // theta -> number of ovoids
  int ovoid_count = 0;
  int external_points = 0;
  bool uniform = false;
  int theta = 0;  // the common value when uniform
};

struct DerivedPair {
  std::shared_ptr<const IncidenceStructure> ambient;
  SubGeometryEmbedding embedding;
  GQOrder order;
  GQOrder sub_order;
  bool hyperplane = false;

  std::shared_ptr<const IncidenceStructure> A;
  std::vector<int> a_point_to_ambient;
  std::vector<int> a_line_to_ambient;
  std::vector<int> ambient_point_to_a;  // -1 for points of the subquadrangle
  std::vector<int> ambient_line_to_a;   // -1 for lines of the subquadrangle

  std::shared_ptr<const IncidenceStructure> E;
  std::vector<Ovoid> ovoids;      // E point i
  std::vector<Rosette> rosettes;  // E line j

  /// Canonical projection; present only for hyperplane embeddings.
  std::optional<CoverCertificate> pi;
  /// Ovoid index of each A point, and rosette index (or -1) of each A line.
  std::vector<int> point_projection;
  std::vector<int> line_projection;
  ThetaCensus census;

  const GeometryMorphism& pi_morphism() const;
};

/// Throws GeometryError if x lies in the subquadrangle, ConsistencyViolation if
/// the perp trace fails the ovoid property.
Ovoid subtended_ovoid(const SubGeometryEmbedding& emb, int x);

/// Requires a full thick subquadrangle (HypothesisError otherwise). Throws
/// ConsistencyViolation when some theta violates (theta-1)t' <= s.
ThetaCensus theta_census(const SubGeometryEmbedding& emb);

struct Lemma72Report {
  bool hypotheses_ok = false;
  std::string hypothesis_failure;
  bool collinear_with_perp = false;  // x' collinear with some point of O_x^perp
  int intersection = 0;
  int expected = 0;
  bool holds = false;
};

Lemma72Report lemma72_check(const SubGeometryEmbedding& emb, const ThetaCensus& census, int x,
                            int x_prime);

struct SpecialCaseReport {
  bool hypotheses_ok = false;
  std::string hypothesis_failure;
  long checked = 0;
  int min_count = 0;
  int max_count = 0;
  bool holds = false;
};

/// theta = s+1 and t' = 1: every z off O_x and S_x sees exactly two points of their union.
SpecialCaseReport special_case_theta_s_plus_1(const SubGeometryEmbedding& emb);

/// Builds A, E and (for geometric hyperplanes) the cover pi. Requires a full
/// thick subquadrangle.
DerivedPair build_derived_pair(const SubGeometryEmbedding& emb);

struct ObservationReport {
  bool holds = false;
  long pairs = 0;
  std::string witness;
};

/// For distinct u, v of A: no common neighbour in A iff they subtend the same ovoid.
/// Also checks that this relation's classes are the point fibers of pi.
ObservationReport observation_pi_check(const DerivedPair& pair);

/// Size s, pairwise meets exactly in the base point, union of size 1 + s^2 t'.
ObservationReport check_rosette_invariants(const DerivedPair& pair);

}  // namespace gqcov
