#include "gqcov/morphism.hpp"

#include <algorithm>

#include "gqcov/errors.hpp"

namespace gqcov {

MorphismCheck verify_morphism(const GeometryMorphism& m) {
  const IncidenceStructure& s = *m.source;
  const IncidenceStructure& t = *m.target;
  if (static_cast<int>(m.point_map.size()) != s.point_count() ||
      static_cast<int>(m.line_map.size()) != s.line_count()) {
    return {false, "map sizes do not match the source"};
  }
  for (int x = 0; x < s.point_count(); ++x) {
    if (m.point_map[x] < 0 || m.point_map[x] >= t.point_count()) {
      return {false, "point " + std::to_string(x) + " has no valid image"};
    }
  }
  for (int l = 0; l < s.line_count(); ++l) {
    const int img = m.line_map[l];
    if (img < 0 || img >= t.line_count()) {
      return {false, "line " + std::to_string(l) + " has no valid image"};
    }
    for (int x : s.points_on(l)) {
      if (!t.incident(m.point_map[x], img)) {
        return {false, "incidence of point " + std::to_string(x) + " and line " + std::to_string(l) +
                           " is not preserved"};
      }
    }
  }
  return {true, {}};
}

CoverCheck verify_cover(const GeometryMorphism& m) {
  CoverCheck out;
  MorphismCheck mc = verify_morphism(m);
  if (!mc.ok) {
    out.failure = CoverFailure::NotMorphism;
    out.witness = mc.witness;
    return out;
  }
  const IncidenceStructure& s = *m.source;
  const IncidenceStructure& t = *m.target;
  std::vector<int> stamp(std::max(t.point_count(), t.line_count()), -1);
  int token = 0;
  for (int x = 0; x < s.point_count(); ++x, ++token) {
    auto pencil = s.lines_through(x);
    if (pencil.size() != t.lines_through(m.point_map[x]).size()) {
      out.failure = CoverFailure::NotCover;
      out.witness = "pencil of point " + std::to_string(x) + " has the wrong size";
      return out;
    }
    for (int l : pencil) {
      if (stamp[m.line_map[l]] == token) {
        out.failure = CoverFailure::NotCover;
        out.witness = "two lines through point " + std::to_string(x) + " have the same image";
        return out;
      }
      stamp[m.line_map[l]] = token;
    }
  }
  for (int l = 0; l < s.line_count(); ++l, ++token) {
    auto row = s.points_on(l);
    if (row.size() != t.points_on(m.line_map[l]).size()) {
      out.failure = CoverFailure::NotCover;
      out.witness = "row of line " + std::to_string(l) + " has the wrong size";
      return out;
    }
    for (int x : row) {
      if (stamp[m.point_map[x]] == token) {
        out.failure = CoverFailure::NotCover;
        out.witness = "two points of line " + std::to_string(l) + " have the same image";
        return out;
      }
      stamp[m.point_map[x]] = token;
    }
  }

  CoverCertificate cert;
  cert.morphism = m;
  cert.point_fibers.assign(t.point_count(), {});
  cert.line_fibers.assign(t.line_count(), {});
  for (int x = 0; x < s.point_count(); ++x) cert.point_fibers[m.point_map[x]].push_back(x);
  for (int l = 0; l < s.line_count(); ++l) cert.line_fibers[m.line_map[l]].push_back(l);
  bool surjective = true;
  std::optional<int> size;
  bool constant = true;
  auto visit = [&](const std::vector<int>& fiber) {
    if (fiber.empty()) surjective = false;
    const int n = static_cast<int>(fiber.size());
    if (!size) size = n;
    if (*size != n) constant = false;
  };
  for (const auto& f : cert.point_fibers) visit(f);
  for (const auto& f : cert.line_fibers) visit(f);
  cert.surjective = surjective;
  if (constant && size && *size > 0) cert.theta = size;
  if (!surjective && s.point_count() > 0 && is_connected(t)) {
    throw ConsistencyViolation("cover onto a connected geometry is not surjective");
  }
  out.certificate = std::move(cert);
  return out;
}

GeometryMorphism compose(const GeometryMorphism& outer, const GeometryMorphism& inner) {
  GeometryMorphism out{inner.source, outer.target, {}, {}};
  out.point_map.reserve(inner.point_map.size());
  out.line_map.reserve(inner.line_map.size());
  for (int p : inner.point_map) out.point_map.push_back(p < 0 ? -1 : outer.point_map[p]);
  for (int l : inner.line_map) out.line_map.push_back(l < 0 ? -1 : outer.line_map[l]);
  return out;
}

GeometryMorphism identity_morphism(std::shared_ptr<const IncidenceStructure> g) {
  GeometryMorphism out{g, g, std::vector<int>(g->point_count()), std::vector<int>(g->line_count())};
  for (int i = 0; i < g->point_count(); ++i) out.point_map[i] = i;
  for (int i = 0; i < g->line_count(); ++i) out.line_map[i] = i;
  return out;
}

GeometryMorphism inverse_automorphism(const GeometryMorphism& m) {
  GeometryMorphism out{m.target, m.source, std::vector<int>(m.point_map.size(), -1),
                       std::vector<int>(m.line_map.size(), -1)};
  for (std::size_t i = 0; i < m.point_map.size(); ++i) {
    if (out.point_map[m.point_map[i]] >= 0) throw GeometryError("point map is not bijective");
    out.point_map[m.point_map[i]] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < m.line_map.size(); ++i) {
    if (out.line_map[m.line_map[i]] >= 0) throw GeometryError("line map is not bijective");
    out.line_map[m.line_map[i]] = static_cast<int>(i);
  }
  return out;
}

bool is_automorphism(const GeometryMorphism& m) {
  const IncidenceStructure& g = *m.source;
  if (m.source.get() != m.target.get() && !(*m.source == *m.target)) return false;
  if (!verify_morphism(m).ok) return false;
  std::vector<char> hit_p(g.point_count(), 0), hit_l(g.line_count(), 0);
  for (int p : m.point_map) {
    if (hit_p[p]) return false;
    hit_p[p] = 1;
  }
  for (int l : m.line_map) {
    if (hit_l[l]) return false;
    hit_l[l] = 1;
  }
  // Bijective and incidence-preserving on a finite structure: rows map onto rows.
  for (int l = 0; l < g.line_count(); ++l) {
    if (g.points_on(l).size() != g.points_on(m.line_map[l]).size()) return false;
  }
  return true;
}

std::optional<std::vector<int>> induced_line_map(const IncidenceStructure& source,
                                                 const IncidenceStructure& target,
                                                 const std::vector<int>& point_map) {
  std::vector<int> out(source.line_count(), -1);
  std::vector<int> img;
  for (int l = 0; l < source.line_count(); ++l) {
    img.clear();
    for (int x : source.points_on(l)) img.push_back(point_map[x]);
    std::sort(img.begin(), img.end());
    auto found = target.find_line(img);
    if (!found) return std::nullopt;
    out[l] = *found;
  }
  return out;
}

}  // namespace gqcov
