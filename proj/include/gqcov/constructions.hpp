#pragma once

#include <memory>
#include <span>
#include <vector>

#include "gqcov/field.hpp"
#include "gqcov/incidence.hpp"

namespace gqcov {

/// An ambient geometry together with a distinguished subgeometry.
struct EmbeddedPair {
  std::shared_ptr<const IncidenceStructure> ambient;
  SubGeometryEmbedding embedding;
};

/// (s+1)x(s+1) grid; points are r*(s+1)+c.
IncidenceStructure build_grid(int s);

/// Symplectic GQ W(q): all points of PG(3,q), totally isotropic lines.
IncidenceStructure build_W(int q);

/// Parabolic quadric x0^2 = x1x2 + x3x4 in PG(4,q).
IncidenceStructure build_Q4(int q);

/// Elliptic quadric f(x0,x1) + x2x3 + x4x5 with the parabolic section x1 = 0.
EmbeddedPair build_Q5_with_Q4(int q);
/// Q(4,q) with the hyperbolic (grid) section x0 = 0.
EmbeddedPair build_Q4_with_Q3(int q);
/// Q(5,q) with the hyperbolic section x0 = x1 = 0.
EmbeddedPair build_Q5_with_Q3(int q);
/// H(4,q^2) with the section x4 = 0; q is the square root of the field order.
EmbeddedPair build_H4_with_H3(int q);

struct QClanSpec {
  int q = 9;
  /// Field automorphism x -> x^sigma; must be a power of the characteristic.
  int sigma = 3;
  /// Non-square; negative selects the first non-square.
  int m = -1;
  /// Optional per-t override of m (size q, indexed by field element t).
  std::vector<int> m_per_t;
};

struct KantorKnuthGQ {
  std::shared_ptr<const IncidenceStructure> geometry;  // order (q, q^2)
  int line_infinity = -1;
  bool classical = false;
  QClanSpec spec;
};

/// Dual of the flock GQ from the Kantor-Knuth q-clan A_t = diag(t, -m t^sigma).
/// Throws GeometryError if the q-clan condition fails for some t != u.
KantorKnuthGQ build_kantor_knuth(QClanSpec spec);

/// True iff the coordinate vectors of the given points span vector dimension <= 3.
/// Throws GeometryError when g carries no coordinates.
bool points_coplanar(const IncidenceStructure& g, std::span<const int> points);

/// Rank of the coordinate vectors of the given points.
int coordinate_rank(const IncidenceStructure& g, std::span<const int> points);

}  // namespace gqcov
