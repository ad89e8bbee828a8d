#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gqcov/incidence.hpp"

namespace gqcov {

/// Point map plus line map between two incidence structures. A line image of
/// -1 marks a partial map (not a morphism).
struct GeometryMorphism {
  std::shared_ptr<const IncidenceStructure> source;
  std::shared_ptr<const IncidenceStructure> target;
  std::vector<int> point_map;
  std::vector<int> line_map;

  bool operator==(const GeometryMorphism& o) const {
    return point_map == o.point_map && line_map == o.line_map;
  }
};

struct MorphismCheck {
  bool ok = false;
  std::string witness;
};

/// Totality, index range and preservation of incidence.
MorphismCheck verify_morphism(const GeometryMorphism& m);

struct CoverCertificate {
  GeometryMorphism morphism;
  std::optional<int> theta;  // present iff all point and line fibers share one size
  std::vector<std::vector<int>> point_fibers;
  std::vector<std::vector<int>> line_fibers;
  bool surjective = false;
};

enum class CoverFailure { None, NotMorphism, NotCover };

struct CoverCheck {
  std::optional<CoverCertificate> certificate;
  CoverFailure failure = CoverFailure::None;
  std::string witness;

  bool ok() const { return certificate.has_value(); }
};

/// A morphism that is bijective on every pencil and every row. Throws
/// ConsistencyViolation if a cover onto a connected target is not surjective.
CoverCheck verify_cover(const GeometryMorphism& m);

/// outer after inner.
GeometryMorphism compose(const GeometryMorphism& outer, const GeometryMorphism& inner);

GeometryMorphism identity_morphism(std::shared_ptr<const IncidenceStructure> g);

/// Inverse of a bijective self-map (automorphism). Throws GeometryError if not bijective.
GeometryMorphism inverse_automorphism(const GeometryMorphism& m);

/// Line images induced by a point map: each line's image point set must be a
/// line of the target. Returns nullopt otherwise.
std::optional<std::vector<int>> induced_line_map(const IncidenceStructure& source,
                                                 const IncidenceStructure& target,
                                                 const std::vector<int>& point_map);

/// True iff m is a bijection of a structure onto itself preserving incidence both ways.
bool is_automorphism(const GeometryMorphism& m);

}  // namespace gqcov
