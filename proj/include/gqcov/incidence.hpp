#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gqcov {

/// Sorted ascending list of distinct point (or line) indices.
using PointSet = std::vector<int>;

/// Homogeneous coordinates attached to a constructed geometry. Metadata only:
/// no operation on the incidence structure depends on them.
struct Coordinates {
  int p = 0;
  int h = 0;
  std::vector<std::vector<int>> vectors;  // one per point

  bool operator==(const Coordinates&) const = default;
};

struct GQOrder {
  int s = 0;
  int t = 0;

  bool thick() const { return s >= 2 && t >= 2; }
  bool operator==(const GQOrder&) const = default;
};

/// Immutable finite point-line incidence structure.
///
/// Lines are stored as sorted point lists in lexicographic order, which makes
/// every index (and every serialized output) deterministic. Collinearity is
/// cached as a dense point-by-point bit matrix.
class IncidenceStructure {
 public:
  IncidenceStructure() = default;

  /// Validates and canonicalizes. Throws GeometryError on out-of-range or
  /// repeated points within a line, or on two lines with identical point sets.
  static IncidenceStructure create(std::string name, int point_count,
                                   std::vector<std::vector<int>> lines,
                                   std::optional<Coordinates> coords = std::nullopt);

  /// As create(), also returning the canonical index of every input line.
  static std::pair<IncidenceStructure, std::vector<int>> create_indexed(
      std::string name, int point_count, std::vector<std::vector<int>> lines,
      std::optional<Coordinates> coords = std::nullopt);

  const std::string& name() const { return name_; }
  int point_count() const { return point_count_; }
  int line_count() const { return static_cast<int>(line_offsets_.size()) - 1; }
  bool empty() const { return point_count_ == 0 && line_count() == 0; }

  std::span<const int> points_on(int line) const;
  std::span<const int> lines_through(int point) const;

  bool incident(int point, int line) const;
  /// Reflexive: every point is collinear with itself.
  bool collinear(int x, int y) const;
  std::optional<int> line_through(int x, int y) const;
  /// Looks up a line by its sorted point list.
  std::optional<int> find_line(std::span<const int> sorted_points) const;

  const std::optional<Coordinates>& coordinates() const { return coords_; }

  /// Copy with a different label.
  IncidenceStructure renamed(std::string name) const;
  /// Point-line dual: point i of the result is line i of this structure.
  IncidenceStructure dual(std::string name) const;

  std::vector<std::vector<int>> lines() const;

  void check_point(int x) const;
  void check_line(int l) const;

  bool operator==(const IncidenceStructure& other) const;

 private:
  std::string name_;
  int point_count_ = 0;
  std::vector<int> line_offsets_{0};
  std::vector<int> line_points_;
  std::vector<int> pencil_offsets_{0};
  std::vector<int> pencil_lines_;
  std::vector<std::uint64_t> collinear_bits_;
  int words_per_row_ = 0;
  std::optional<Coordinates> coords_;
};

/// Which GQ axiom failed, with a witness.
struct AxiomFailure {
  char axiom = '?';  // 'a', 'b' or 'c'
  int point = -1;
  int line = -1;
  std::string detail;
};

struct GQCheck {
  std::optional<GQOrder> order;
  std::optional<AxiomFailure> failure;

  bool ok() const { return order.has_value(); }
};

/// Checks the three generalized-quadrangle axioms. Throws GeometryError on an
/// empty structure.
GQCheck verify_gq_axioms(const IncidenceStructure& g);

PointSet perp(const IncidenceStructure& g, int x);
/// Intersection of perps; the empty set maps to all points.
PointSet perp_set(const IncidenceStructure& g, std::span<const int> ys);
PointSet biperp(const IncidenceStructure& g, std::span<const int> ys);
/// { w : w^perp meets {u,v}^perp-perp }. Throws GeometryError when u == v.
PointSet closure_cl(const IncidenceStructure& g, int u, int v);

/// Connectivity of the point-line incidence graph.
bool is_connected(const IncidenceStructure& g);

struct Triangle {
  int x = -1, y = -1, z = -1;
};
/// Three pairwise collinear points joined by three distinct lines with no
/// common line.
std::optional<Triangle> has_triangle(const IncidenceStructure& g);

struct EmbeddingFlags {
  bool is_full = false;
  bool is_ideal = false;
  bool is_geometric_hyperplane = false;

  bool operator==(const EmbeddingFlags&) const = default;
};

/// A subgeometry (P', L') of an ambient structure with the induced incidence.
class SubGeometryEmbedding {
 public:
  SubGeometryEmbedding() = default;

  const IncidenceStructure& ambient() const { return *ambient_; }
  std::shared_ptr<const IncidenceStructure> ambient_ptr() const { return ambient_; }
  const PointSet& points() const { return points_; }
  const std::vector<int>& lines() const { return lines_; }
  const std::optional<GQOrder>& sub_order() const { return sub_order_; }
  const EmbeddingFlags& flags() const { return flags_; }

  /// The restriction as a standalone structure; its point i is points()[i].
  const IncidenceStructure& sub() const { return sub_; }

  bool contains_point(int ambient_point) const { return point_to_sub_[ambient_point] >= 0; }
  bool contains_line(int ambient_line) const { return line_to_sub_[ambient_line] >= 0; }
  int sub_point(int ambient_point) const { return point_to_sub_[ambient_point]; }
  int sub_line(int ambient_line) const { return line_to_sub_[ambient_line]; }
  int ambient_point(int sub_point) const { return points_[sub_point]; }
  int ambient_line(int sub_line) const { return sub_line_to_ambient_[sub_line]; }

  friend SubGeometryEmbedding induced_subgeometry(std::shared_ptr<const IncidenceStructure>,
                                                  PointSet, std::vector<int>);

 private:
  std::shared_ptr<const IncidenceStructure> ambient_;
  PointSet points_;
  std::vector<int> lines_;
  std::optional<GQOrder> sub_order_;
  EmbeddingFlags flags_;
  IncidenceStructure sub_;
  std::vector<int> point_to_sub_;
  std::vector<int> line_to_sub_;
  std::vector<int> sub_line_to_ambient_;
};

/// Builds the embedding and computes its flags and (when the restriction is a
/// GQ) its order. Input sets need not be sorted; duplicates are rejected.
SubGeometryEmbedding induced_subgeometry(std::shared_ptr<const IncidenceStructure> ambient,
                                         PointSet points, std::vector<int> lines);

/// Convenience: every ambient line whose points all lie in the set.
SubGeometryEmbedding full_subgeometry_on(std::shared_ptr<const IncidenceStructure> ambient,
                                         PointSet points);

struct HyperplaneKind {
  enum class Kind { Ovoid, FullSubGQ };
  Kind kind = Kind::Ovoid;
  GQOrder sub_order{};  // only for FullSubGQ
};

/// Classifies a geometric hyperplane of a thick GQ. Throws HypothesisError if the
/// embedding is not a hyperplane, ConsistencyViolation if neither case applies.
HyperplaneKind classify_hyperplane(const SubGeometryEmbedding& e);

/// Small helper for membership tests on index sets.
class IndexMask {
 public:
  explicit IndexMask(int n = 0) : bits_(n, 0) {}
  IndexMask(int n, std::span<const int> members) : bits_(n, 0) {
    for (int x : members) bits_[x] = 1;
  }
  bool operator[](int i) const { return bits_[i] != 0; }
  void set(int i) { bits_[i] = 1; }
  void reset(int i) { bits_[i] = 0; }
  int size() const { return static_cast<int>(bits_.size()); }

 private:
  std::vector<char> bits_;
};

}  // namespace gqcov
