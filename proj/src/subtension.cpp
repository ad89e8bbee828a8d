#include "gqcov/subtension.hpp"

#include <algorithm>
#include <map>

#include "gqcov/errors.hpp"

namespace gqcov {

namespace {

GQOrder declared_order(const IncidenceStructure& g) {
  if (g.line_count() == 0 || g.point_count() == 0) throw GeometryError("empty ambient geometry");
  return GQOrder{static_cast<int>(g.points_on(0).size()) - 1,
                 static_cast<int>(g.lines_through(0).size()) - 1};
}

void require_full_thick(const SubGeometryEmbedding& emb) {
  if (!emb.flags().is_full) throw HypothesisError("subquadrangle is not full");
  if (!emb.sub_order()) throw HypothesisError("subgeometry is not a generalized quadrangle");
  if (!declared_order(emb.ambient()).thick()) throw HypothesisError("ambient is not thick");
}

PointSet trace(const SubGeometryEmbedding& emb, int x) {
  const IncidenceStructure& g = emb.ambient();
  PointSet out;
  for (int l : g.lines_through(x))
    for (int y : g.points_on(l))
      if (y != x && emb.contains_point(y)) out.push_back(y);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void validate_ovoid(const SubGeometryEmbedding& emb, const PointSet& pts) {
  const IncidenceStructure& g = emb.ambient();
  IndexMask in(g.point_count(), pts);
  for (int l : emb.lines()) {
    int hits = 0;
    for (int y : g.points_on(l))
      if (in[y]) ++hits;
    if (hits != 1) {
      throw ConsistencyViolation("subtended point set meets line " + std::to_string(l) + " in " +
                                 std::to_string(hits) + " points");
    }
  }
  if (emb.sub_order()) {
    const int expected = declared_order(g).s * emb.sub_order()->t + 1;
    if (static_cast<int>(pts.size()) != expected) {
      throw ConsistencyViolation("subtended ovoid has " + std::to_string(pts.size()) +
                                 " points, expected " + std::to_string(expected));
    }
  }
}

// Ovoid point set -> subtenders, in ascending point-set order.
std::map<PointSet, PointSet> collect_ovoids(const SubGeometryEmbedding& emb) {
  std::map<PointSet, PointSet> out;
  for (int x = 0; x < emb.ambient().point_count(); ++x) {
    if (emb.contains_point(x)) continue;
    out[trace(emb, x)].push_back(x);
  }
  for (const auto& [pts, subs] : out) validate_ovoid(emb, pts);
  return out;
}

ThetaCensus census_of(const std::map<PointSet, PointSet>& ovoids, const GQOrder& ord,
                      const GQOrder& sub) {
  ThetaCensus c;
  for (const auto& [pts, subs] : ovoids) {
    const int theta = static_cast<int>(subs.size());
    ++c.counts[theta];
    ++c.ovoid_count;
    c.external_points += theta;
  }
  for (const auto& [theta, n] : c.counts) {
    if ((theta - 1) * sub.t > ord.s) {
      throw ConsistencyViolation("theta = " + std::to_string(theta) + " violates (theta-1)t' <= s");
    }
  }
  c.uniform = c.counts.size() == 1;
  c.theta = c.uniform ? c.counts.begin()->first : 0;
  return c;
}

}  // namespace

const GeometryMorphism& DerivedPair::pi_morphism() const {
  if (!pi) throw HypothesisError("derived pair has no cover certificate");
  return pi->morphism;
}

Ovoid subtended_ovoid(const SubGeometryEmbedding& emb, int x) {
  emb.ambient().check_point(x);
  if (emb.contains_point(x)) throw GeometryError("point " + std::to_string(x) + " lies in the subquadrangle");
  Ovoid o;
  o.points = trace(emb, x);
  validate_ovoid(emb, o.points);
  for (int y = 0; y < emb.ambient().point_count(); ++y) {
    if (emb.contains_point(y)) continue;
    if (y == x || trace(emb, y) == o.points) o.subtenders.push_back(y);
  }
  return o;
}

ThetaCensus theta_census(const SubGeometryEmbedding& emb) {
  require_full_thick(emb);
  return census_of(collect_ovoids(emb), declared_order(emb.ambient()), *emb.sub_order());
}

Lemma72Report lemma72_check(const SubGeometryEmbedding& emb, const ThetaCensus& census, int x,
                            int x_prime) {
  Lemma72Report r;
  require_full_thick(emb);
  const GQOrder ord = declared_order(emb.ambient());
  const GQOrder sub = *emb.sub_order();
  if (sub.t == 1) r.hypothesis_failure = "t' = 1";
  else if (ord.t != ord.s * sub.t) r.hypothesis_failure = "t != s t'";
  else if (!census.uniform) r.hypothesis_failure = "census is not uniform";
  else if ((census.theta - 1) * ord.t != ord.s * ord.s) r.hypothesis_failure = "(theta-1)t != s^2";
  else if (emb.contains_point(x) || emb.contains_point(x_prime)) r.hypothesis_failure = "point inside the subquadrangle";
  if (!r.hypothesis_failure.empty()) return r;

  const PointSet ox = trace(emb, x);
  const PointSet perp_ox = perp_set(emb.ambient(), ox);
  if (std::binary_search(perp_ox.begin(), perp_ox.end(), x_prime)) {
    r.hypothesis_failure = "x' lies in O_x^perp";
    return r;
  }
  r.hypotheses_ok = true;
  for (int z : perp_ox) {
    if (emb.ambient().collinear(z, x_prime)) {
      r.collinear_with_perp = true;
      break;
    }
  }
  const PointSet oxp = trace(emb, x_prime);
  PointSet common;
  std::set_intersection(ox.begin(), ox.end(), oxp.begin(), oxp.end(), std::back_inserter(common));
  r.intersection = static_cast<int>(common.size());
  r.expected = r.collinear_with_perp ? 1 : ord.t / ord.s + 1;
  r.holds = r.intersection == r.expected;
  return r;
}

SpecialCaseReport special_case_theta_s_plus_1(const SubGeometryEmbedding& emb) {
  SpecialCaseReport r;
  require_full_thick(emb);
  const GQOrder ord = declared_order(emb.ambient());
  const auto ovoids = collect_ovoids(emb);
  const ThetaCensus c = census_of(ovoids, ord, *emb.sub_order());
  if (emb.sub_order()->t != 1) r.hypothesis_failure = "t' != 1";
  else if (!c.uniform || c.theta != ord.s + 1) r.hypothesis_failure = "census is not uniformly (s+1)";
  if (!r.hypothesis_failure.empty()) return r;
  r.hypotheses_ok = true;
  r.min_count = 1 << 30;
  const IncidenceStructure& g = emb.ambient();
  for (const auto& [pts, subs] : ovoids) {
    PointSet u;
    std::set_union(pts.begin(), pts.end(), subs.begin(), subs.end(), std::back_inserter(u));
    IndexMask in(g.point_count(), u);
    for (int z = 0; z < g.point_count(); ++z) {
      if (in[z]) continue;
      int count = 0;
      for (int w : u)
        if (g.collinear(z, w)) ++count;
      r.min_count = std::min(r.min_count, count);
      r.max_count = std::max(r.max_count, count);
      ++r.checked;
    }
  }
  r.holds = r.checked > 0 && r.min_count == 2 && r.max_count == 2;
  return r;
}

DerivedPair build_derived_pair(const SubGeometryEmbedding& emb) {
  require_full_thick(emb);
  const IncidenceStructure& g = emb.ambient();
  DerivedPair pair;
  pair.ambient = emb.ambient_ptr();
  pair.embedding = emb;
  pair.order = declared_order(g);
  pair.sub_order = *emb.sub_order();
  pair.hyperplane = emb.flags().is_geometric_hyperplane;

  // A: everything outside the subquadrangle.
  pair.ambient_point_to_a.assign(g.point_count(), -1);
  for (int x = 0; x < g.point_count(); ++x) {
    if (emb.contains_point(x)) continue;
    pair.ambient_point_to_a[x] = static_cast<int>(pair.a_point_to_ambient.size());
    pair.a_point_to_ambient.push_back(x);
  }
  std::vector<std::vector<int>> a_lines;
  std::vector<int> a_line_source;
  for (int l = 0; l < g.line_count(); ++l) {
    if (emb.contains_line(l)) continue;
    std::vector<int> pts;
    for (int x : g.points_on(l))
      if (pair.ambient_point_to_a[x] >= 0) pts.push_back(pair.ambient_point_to_a[x]);
    a_lines.push_back(std::move(pts));
    a_line_source.push_back(l);
  }
  auto [a, a_canon] = IncidenceStructure::create_indexed(
      "A(" + g.name() + ")", static_cast<int>(pair.a_point_to_ambient.size()), std::move(a_lines));
  pair.a_line_to_ambient.assign(a_canon.size(), -1);
  pair.ambient_line_to_a.assign(g.line_count(), -1);
  for (std::size_t i = 0; i < a_canon.size(); ++i) {
    pair.a_line_to_ambient[a_canon[i]] = a_line_source[i];
    pair.ambient_line_to_a[a_line_source[i]] = a_canon[i];
  }
  pair.A = std::make_shared<const IncidenceStructure>(std::move(a));

  // E points: distinct subtended ovoids in point-set order.
  const auto ovoids = collect_ovoids(emb);
  pair.census = census_of(ovoids, pair.order, pair.sub_order);
  std::map<PointSet, int> ovoid_index;
  for (const auto& [pts, subs] : ovoids) {
    ovoid_index[pts] = static_cast<int>(pair.ovoids.size());
    pair.ovoids.push_back(Ovoid{pts, subs});
  }
  pair.point_projection.assign(pair.A->point_count(), -1);
  for (int i = 0; i < static_cast<int>(pair.ovoids.size()); ++i)
    for (int x : pair.ovoids[i].subtenders) pair.point_projection[pair.ambient_point_to_a[x]] = i;

  // E lines: rosettes of lines meeting the subquadrangle in one point.
  std::map<std::vector<int>, Rosette> rosettes;
  for (int l = 0; l < g.line_count(); ++l) {
    if (emb.contains_line(l)) continue;
    int base = -1, inside = 0;
    std::vector<int> members;
    for (int x : g.points_on(l)) {
      if (emb.contains_point(x)) {
        base = x;
        ++inside;
      } else {
        members.push_back(pair.point_projection[pair.ambient_point_to_a[x]]);
      }
    }
    if (inside != 1) continue;
    std::sort(members.begin(), members.end());
    Rosette& r = rosettes[members];
    if (r.witness_lines.empty()) {
      r.base_point = base;
      r.ovoids = members;
    } else if (r.base_point != base) {
      throw ConsistencyViolation("one rosette with two base points");
    }
    r.witness_lines.push_back(l);
  }
  std::vector<std::vector<int>> e_lines;
  for (auto& [members, r] : rosettes) {
    e_lines.push_back(members);
    pair.rosettes.push_back(std::move(r));
  }
  auto [e, e_canon] = IncidenceStructure::create_indexed(
      "E(" + g.name() + ")", static_cast<int>(pair.ovoids.size()), std::move(e_lines));
  for (std::size_t i = 0; i < e_canon.size(); ++i) {
    if (e_canon[i] != static_cast<int>(i)) throw ConsistencyViolation("rosette order is not canonical");
  }
  pair.E = std::make_shared<const IncidenceStructure>(std::move(e));

  std::map<int, int> rosette_of_line;
  for (int j = 0; j < static_cast<int>(pair.rosettes.size()); ++j)
    for (int l : pair.rosettes[j].witness_lines) rosette_of_line[l] = j;
  pair.line_projection.assign(pair.A->line_count(), -1);
  for (int l = 0; l < pair.A->line_count(); ++l) {
    auto it = rosette_of_line.find(pair.a_line_to_ambient[l]);
    if (it != rosette_of_line.end()) pair.line_projection[l] = it->second;
  }

  if (pair.hyperplane) {
    GeometryMorphism pi{pair.A, pair.E, pair.point_projection, pair.line_projection};
    CoverCheck check = verify_cover(pi);
    if (!check.ok()) throw ConsistencyViolation("canonical projection is not a cover: " + check.witness);
    if (!check.certificate->surjective) throw ConsistencyViolation("canonical projection is not surjective");
    pair.pi = std::move(check.certificate);
    ObservationReport ros = check_rosette_invariants(pair);
    if (!ros.holds) throw ConsistencyViolation(ros.witness);
  }
  return pair;
}

ObservationReport observation_pi_check(const DerivedPair& pair) {
  ObservationReport r;
  const IncidenceStructure& a = *pair.A;
  const int n = a.point_count();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      bool meet = false;
      for (int w = 0; w < n && !meet; ++w) meet = a.collinear(w, u) && a.collinear(w, v);
      const bool same = pair.point_projection[u] == pair.point_projection[v];
      ++r.pairs;
      if (meet == same) {
        r.witness = "points " + std::to_string(u) + " and " + std::to_string(v) + " break the dichotomy";
        return r;
      }
    }
  }
  r.holds = true;
  return r;
}

ObservationReport check_rosette_invariants(const DerivedPair& pair) {
  ObservationReport r;
  const int s = pair.order.s;
  const auto& sub_points = pair.embedding.points();
  for (std::size_t j = 0; j < pair.rosettes.size(); ++j) {
    const Rosette& ros = pair.rosettes[j];
    ++r.pairs;
    if (static_cast<int>(ros.ovoids.size()) != s) {
      r.witness = "rosette " + std::to_string(j) + " does not have s ovoids";
      return r;
    }
    PointSet all;
    for (std::size_t a = 0; a < ros.ovoids.size(); ++a) {
      const PointSet& pa = pair.ovoids[ros.ovoids[a]].points;
      for (std::size_t b = a + 1; b < ros.ovoids.size(); ++b) {
        const PointSet& pb = pair.ovoids[ros.ovoids[b]].points;
        PointSet common;
        std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(common));
        if (common != PointSet{ros.base_point}) {
          r.witness = "two ovoids of rosette " + std::to_string(j) + " meet outside the base point";
          return r;
        }
      }
      all.insert(all.end(), pa.begin(), pa.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    // Pairwise meeting only in the base point forces |union| = 1 + s^2 t'.
    const int expected = 1 + s * s * pair.sub_order.t;
    if (static_cast<int>(all.size()) != expected ||
        !std::includes(sub_points.begin(), sub_points.end(), all.begin(), all.end())) {
      r.witness = "rosette " + std::to_string(j) + " has a union of the wrong size";
      return r;
    }
  }
  r.holds = true;
  return r;
}

}  // namespace gqcov
