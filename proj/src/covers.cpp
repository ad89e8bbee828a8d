#include "gqcov/covers.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "gqcov/constructions.hpp"
#include "gqcov/errors.hpp"
#include "gqcov/group.hpp"

namespace gqcov {

namespace {

void require_hyperplane_pair(const DerivedPair& pair) {
  if (!pair.pi) throw HypothesisError("pair has no canonical cover (subquadrangle is not a geometric hyperplane)");
  if (!pair.order.thick() || !pair.sub_order.thick()) throw HypothesisError("pair is not thick");
}

bool same_structure(const std::shared_ptr<const IncidenceStructure>& a,
                    const std::shared_ptr<const IncidenceStructure>& b) {
  return a.get() == b.get() || (a && b && *a == *b);
}

// Subquadrangle point (ambient index) on an ambient line outside it.
int anchor_of(const DerivedPair& pair, int ambient_line) {
  int found = -1;
  for (int x : pair.ambient->points_on(ambient_line)) {
    if (!pair.embedding.contains_point(x)) continue;
    if (found >= 0) return -1;
    found = x;
  }
  return found;
}

std::vector<int> rosette_bases(const DerivedPair& pair) {
  std::vector<int> out;
  for (const Rosette& r : pair.rosettes) out.push_back(r.base_point);
  return out;
}

PointSet image_set(const DerivedPair& pair, const PointSet& ambient_points, const std::vector<int>& sub_perm) {
  const SubGeometryEmbedding& emb = pair.embedding;
  PointSet out;
  for (int p : ambient_points) out.push_back(emb.ambient_point(sub_perm[emb.sub_point(p)]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FactorizationResult factorize_lower(const DerivedPair& pair, const GeometryMorphism& gamma) {
  require_hyperplane_pair(pair);
  if (!same_structure(gamma.source, pair.A) || !same_structure(gamma.target, pair.E))
    throw HypothesisError("cover must map A onto E of the given pair");
  CoverCheck cc = verify_cover(gamma);
  if (!cc.ok()) throw HypothesisError("not a cover: " + cc.witness);

  const IncidenceStructure& a = *pair.A;
  const IncidenceStructure& e = *pair.E;
  const CoverCertificate& pi = *pair.pi;
  FactorizationResult out;
  out.alpha = GeometryMorphism{pair.E, pair.E, std::vector<int>(e.point_count(), -1),
                               std::vector<int>(e.line_count(), -1)};

  for (int o = 0; o < e.point_count(); ++o) {
    const auto& fiber = pi.point_fibers[o];
    for (std::size_t i = 0; i < fiber.size(); ++i) {
      for (std::size_t j = i + 1; j < fiber.size(); ++j) {
        const int y = fiber[i], z = fiber[j];
        bool common = a.collinear(y, z);
        for (int w = 0; w < a.point_count() && !common; ++w) common = a.collinear(w, y) && a.collinear(w, z);
        if (common) {
          throw ConsistencyViolation("points " + std::to_string(y) + " and " + std::to_string(z) +
                                     " of one fiber have a common neighbour in A");
        }
      }
      const int img = gamma.point_map[fiber[i]];
      if (out.alpha.point_map[o] >= 0 && out.alpha.point_map[o] != img) {
        throw ConsistencyViolation("fiber over point " + std::to_string(o) + " has two images");
      }
      out.alpha.point_map[o] = img;
    }
  }
  for (int r = 0; r < e.line_count(); ++r) {
    for (int l : pi.line_fibers[r]) {
      const int img = gamma.line_map[l];
      if (out.alpha.line_map[r] >= 0 && out.alpha.line_map[r] != img) {
        throw ConsistencyViolation("fiber over line " + std::to_string(r) + " has two images");
      }
      out.alpha.line_map[r] = img;
    }
  }
  if (!is_automorphism(out.alpha)) throw ConsistencyViolation("induced map on E is not an automorphism");
  if (!(compose(out.alpha, pi.morphism) == gamma)) throw ConsistencyViolation("gamma differs from alpha o pi");

  // zeta: base point of the rosettes covered by gamma^-1(L) goes to the base of L.
  const SubGeometryEmbedding& emb = pair.embedding;
  const int n = emb.sub().point_count();
  out.zeta.assign(n, -1);
  const std::vector<int> bases = rosette_bases(pair);
  std::vector<int> preimage_anchor(e.line_count(), -1);
  for (int l = 0; l < a.line_count(); ++l) {
    const int u = anchor_of(pair, pair.a_line_to_ambient[l]);
    int& slot = preimage_anchor[gamma.line_map[l]];
    if (u < 0 || (slot >= 0 && slot != u)) {
      throw ConsistencyViolation("lines over E line " + std::to_string(gamma.line_map[l]) +
                                 " do not share a subquadrangle point");
    }
    slot = u;
  }
  for (int r = 0; r < e.line_count(); ++r) {
    const int u = emb.sub_point(preimage_anchor[r]);
    const int v = emb.sub_point(bases[r]);
    if (out.zeta[u] >= 0 && out.zeta[u] != v) throw ConsistencyViolation("zeta is not well defined");
    out.zeta[u] = v;
  }
  if (std::find(out.zeta.begin(), out.zeta.end(), -1) != out.zeta.end() || !gqcov::is_permutation(out.zeta))
    throw ConsistencyViolation("zeta is not a permutation");
  auto lines = induced_line_map(emb.sub(), emb.sub(), out.zeta);
  if (!lines) throw ConsistencyViolation("zeta does not preserve collinearity");
  out.zeta_lines = std::move(*lines);

  std::vector<int> zeta_inv(n);
  for (int i = 0; i < n; ++i) zeta_inv[out.zeta[i]] = i;
  bool forward = true, inverse = true;
  for (int o = 0; o < e.point_count(); ++o) {
    const PointSet& target = pair.ovoids[out.alpha.point_map[o]].points;
    if (forward && image_set(pair, pair.ovoids[o].points, out.zeta) != target) forward = false;
    if (inverse && image_set(pair, pair.ovoids[o].points, zeta_inv) != target) inverse = false;
  }
  if (forward) {
    out.orientation = ZetaOrientation::Forward;
  } else if (inverse) {
    out.orientation = ZetaOrientation::Inverse;
  } else {
    throw ConsistencyViolation("alpha agrees with neither zeta nor its inverse on ovoids");
  }
  return out;
}

CoverEnumeration enumerate_covers(std::shared_ptr<const IncidenceStructure> source,
                                  std::shared_ptr<const IncidenceStructure> target, long node_budget) {
  const IncidenceStructure& s = *source;
  const IncidenceStructure& t = *target;
  CoverEnumeration out;
  const int n = s.point_count();
  for (int l = 0; l < s.line_count(); ++l)
    if (s.points_on(l).size() < 2) throw GeometryError("cover enumeration needs lines with two or more points");

  std::vector<int> order;
  std::vector<char> seen(n, 0);
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    seen[start] = 1;
    order.push_back(start);
    for (std::size_t i = order.size() - 1; i < order.size(); ++i)
      for (int l : s.lines_through(order[i]))
        for (int y : s.points_on(l))
          if (!seen[y]) {
            seen[y] = 1;
            order.push_back(y);
          }
  }

  std::vector<int> pmap(n, -1), lmap(s.line_count(), -1);
  std::vector<int> set_lines;  // undo log

  auto try_assign = [&](int v, int c) -> bool {
    if (s.lines_through(v).size() != t.lines_through(c).size()) return false;
    for (int l : s.lines_through(v)) {
      int img = lmap[l];
      for (int u : s.points_on(l)) {
        if (u == v || pmap[u] < 0) continue;
        if (pmap[u] == c) return false;
        if (img < 0) {
          auto through = t.line_through(pmap[u], c);
          if (!through) return false;
          img = *through;
        }
        if (!t.incident(pmap[u], img) || !t.incident(c, img)) return false;
      }
      if (img >= 0 && lmap[l] < 0) {
        // The new line image must stay distinct within every affected pencil.
        for (int w : s.points_on(l)) {
          if (w != v && pmap[w] < 0) continue;
          for (int l2 : s.lines_through(w))
            if (l2 != l && lmap[l2] == img) return false;
        }
        lmap[l] = img;
        set_lines.push_back(l);
      }
    }
    pmap[v] = c;
    return true;
  };

  std::function<void(int)> rec = [&](int depth) {
    if (depth == n) {
      GeometryMorphism m{source, target, pmap, lmap};
      CoverCheck cc = verify_cover(m);
      if (cc.ok()) out.covers.push_back(std::move(*cc.certificate));
      return;
    }
    const int v = order[depth];
    for (int c = 0; c < t.point_count(); ++c) {
      if (++out.nodes > node_budget) throw BudgetExceeded("cover enumeration budget exhausted");
      const std::size_t mark = set_lines.size();
      if (try_assign(v, c)) rec(depth + 1);
      pmap[v] = -1;
      while (set_lines.size() > mark) {
        lmap[set_lines.back()] = -1;
        set_lines.pop_back();
      }
    }
  };
  rec(0);
  std::sort(out.covers.begin(), out.covers.end(), [](const CoverCertificate& a, const CoverCertificate& b) {
    if (a.morphism.point_map != b.morphism.point_map) return a.morphism.point_map < b.morphism.point_map;
    return a.morphism.line_map < b.morphism.line_map;
  });
  return out;
}

InitialObjectReport connecting_automorphism(const GeometryMorphism& gamma, const FactorizationResult& f,
                                            const GeometryMorphism& gamma2, const FactorizationResult& f2) {
  InitialObjectReport r;
  r.delta = compose(f2.alpha, inverse_automorphism(f.alpha));
  r.commutes = compose(r.delta, gamma) == gamma2;

  GeometryMorphism forced{r.delta.source, r.delta.target, std::vector<int>(r.delta.point_map.size(), -1),
                          std::vector<int>(r.delta.line_map.size(), -1)};
  bool well_defined = true;
  auto force = [&](std::vector<int>& slot_map, int at, int value) {
    if (slot_map[at] >= 0 && slot_map[at] != value) well_defined = false;
    slot_map[at] = value;
  };
  for (std::size_t y = 0; y < gamma.point_map.size(); ++y)
    force(forced.point_map, gamma.point_map[y], gamma2.point_map[y]);
  for (std::size_t l = 0; l < gamma.line_map.size(); ++l)
    force(forced.line_map, gamma.line_map[l], gamma2.line_map[l]);
  r.unique = well_defined && forced == r.delta;
  return r;
}

InitialObjectReport verify_initial_object(const DerivedPair& pair, const GeometryMorphism& gamma,
                                          const GeometryMorphism& gamma2) {
  return connecting_automorphism(gamma, factorize_lower(pair, gamma), gamma2, factorize_lower(pair, gamma2));
}

ChiResult reconstruct_chi(const DerivedPair& pair, const GeometryMorphism& gamma) {
  require_hyperplane_pair(pair);
  if (!same_structure(gamma.target, pair.E)) throw HypothesisError("cover must target E of the given pair");
  ChiResult res;
  auto fail = [&](ChiFailure f, std::string w) {
    res.failure = f;
    res.witness = std::move(w);
    return res;
  };
  CoverCheck cc = verify_cover(gamma);
  if (!cc.ok() || !cc.certificate->theta || *cc.certificate->theta != pair.census.theta) {
    return fail(ChiFailure::NotThetaCover, cc.ok() ? "fibers do not all have size theta" : cc.witness);
  }
  const IncidenceStructure& c = *gamma.source;
  if (auto tri = has_triangle(c)) {
    return fail(ChiFailure::TriangleInInput, "points " + std::to_string(tri->x) + ", " + std::to_string(tri->y) +
                                                 ", " + std::to_string(tri->z));
  }
  const SubGeometryEmbedding& emb = pair.embedding;
  const IncidenceStructure& sub = emb.sub();
  const int ns = sub.point_count();
  const int pc = c.point_count();
  const auto& line_fibers = cc.certificate->line_fibers;
  const int s = pair.order.s, t = pair.order.t, t_sub = pair.sub_order.t;

  ChiReconstruction rec;
  rec.source = gamma.source;
  rec.order = pair.order;
  rec.star_lines.assign(ns, {});
  for (int r = 0; r < static_cast<int>(pair.rosettes.size()); ++r) {
    const int x = emb.sub_point(pair.rosettes[r].base_point);
    for (int l : line_fibers[r]) rec.star_lines[x].push_back(l);
  }
  std::vector<int> stamp(pc, -1);
  for (int x = 0; x < ns; ++x) {
    auto& star = rec.star_lines[x];
    std::sort(star.begin(), star.end());
    if (static_cast<int>(star.size()) != t - t_sub) {
      return fail(ChiFailure::WrongCounts, "x* of point " + std::to_string(x) + " has " +
                                               std::to_string(star.size()) + " lines");
    }
    for (int l : star) {
      for (int y : c.points_on(l)) {
        if (stamp[y] == x) return fail(ChiFailure::StarNotDisjoint, "lines of x* for point " + std::to_string(x) + " meet");
        stamp[y] = x;
      }
    }
  }

  std::vector<int> base_of_line(c.line_count());
  for (int l = 0; l < c.line_count(); ++l) base_of_line[l] = emb.sub_point(pair.rosettes[gamma.line_map[l]].base_point);
  std::vector<std::vector<int>> lines;
  for (int l = 0; l < c.line_count(); ++l) {
    std::vector<int> pts(c.points_on(l).begin(), c.points_on(l).end());
    pts.push_back(pc + base_of_line[l]);
    lines.push_back(std::move(pts));
  }
  for (int m = 0; m < sub.line_count(); ++m) {
    std::vector<int> pts;
    for (int x : sub.points_on(m)) pts.push_back(pc + x);
    lines.push_back(std::move(pts));
  }
  auto [chi, canon] = IncidenceStructure::create_indexed("chi", pc + ns, std::move(lines));
  const long want_points = static_cast<long>(s + 1) * (static_cast<long>(s) * t + 1);
  const long want_lines = static_cast<long>(t + 1) * (static_cast<long>(s) * t + 1);
  if (chi.point_count() != want_points || chi.line_count() != want_lines) {
    return fail(ChiFailure::WrongCounts, std::to_string(chi.point_count()) + " points, " +
                                             std::to_string(chi.line_count()) + " lines");
  }
  if (auto tri = has_triangle(chi)) {
    return fail(ChiFailure::TriangleInChi, "points " + std::to_string(tri->x) + ", " + std::to_string(tri->y) + ", " +
                                               std::to_string(tri->z));
  }
  GQCheck axioms = verify_gq_axioms(chi);
  if (!axioms.ok() || !(*axioms.order == pair.order)) {
    return fail(ChiFailure::AxiomFailure, axioms.ok() ? "wrong order" : axioms.failure->detail);
  }
  rec.chi = std::make_shared<const IncidenceStructure>(std::move(chi));

  PointSet star_points;
  for (int x = 0; x < ns; ++x) {
    star_points.push_back(pc + x);
    rec.star_point.push_back(pc + x);
  }
  std::vector<int> sub_lines;
  for (int m = 0; m < sub.line_count(); ++m) sub_lines.push_back(canon[c.line_count() + m]);
  rec.chi_prime = induced_subgeometry(rec.chi, star_points, sub_lines);
  rec.sigma_star.resize(ns);
  for (int i = 0; i < ns; ++i) rec.sigma_star[i] = rec.chi_prime.ambient_point(i) - pc;
  auto sigma_lines = induced_line_map(rec.chi_prime.sub(), sub, rec.sigma_star);
  if (!rec.chi_prime.sub_order() || !gqcov::is_permutation(rec.sigma_star) || !sigma_lines ||
      !gqcov::is_permutation(*sigma_lines)) {
    return fail(ChiFailure::SigmaNotIsomorphism, "x* -> x is not an isomorphism onto the subquadrangle");
  }

  // Subtended ovoids of chi' in chi, read through sigma*, must be the points of E.
  std::vector<char> covered(pair.ovoids.size(), 0);
  for (int y = 0; y < pc; ++y) {
    PointSet o;
    for (int l : rec.chi->lines_through(y))
      for (int z : rec.chi->points_on(l))
        if (z >= pc) o.push_back(emb.ambient_point(z - pc));
    std::sort(o.begin(), o.end());
    const int img = gamma.point_map[y];
    if (o != pair.ovoids[img].points) {
      return fail(ChiFailure::DerivedMismatch, "point " + std::to_string(y) + " subtends the wrong ovoid");
    }
    covered[img] = 1;
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
    return fail(ChiFailure::DerivedMismatch, "some ovoid of E is not subtended in chi");
  }
  res.value = std::move(rec);
  return res;
}

Identification identify_chi_prime(const ChiReconstruction& rec, const DerivedPair& pair) {
  if (!same_structure(rec.source, pair.A)) throw HypothesisError("identification needs a cover with source A");
  Identification out;
  const SubGeometryEmbedding& emb = pair.embedding;
  const int ns = emb.sub().point_count();
  out.double_star.assign(ns, -1);
  for (int x = 0; x < ns; ++x) {
    int common = -1;
    for (int l : rec.star_lines[x]) {
      const int u = anchor_of(pair, pair.a_line_to_ambient[l]);
      if (u < 0 || (common >= 0 && common != u)) {
        out.witness = "lines of x* for point " + std::to_string(x) + " have no common subquadrangle point";
        return out;
      }
      common = u;
    }
    if (common < 0) {
      out.witness = "x* for point " + std::to_string(x) + " is empty";
      return out;
    }
    out.double_star[x] = emb.sub_point(common);
  }
  if (!gqcov::is_permutation(out.double_star) || !induced_line_map(emb.sub(), emb.sub(), out.double_star)) {
    out.witness = "x* -> x** does not preserve collinearity";
    return out;
  }
  out.ok = true;
  return out;
}

ConditionCSample condition_c_instances(const DerivedPair& pair, int per_kind, std::uint64_t seed,
                                       ConditionCReading reading, long max_attempts) {
  require_hyperplane_pair(pair);
  const IncidenceStructure& g = *pair.ambient;
  const SubGeometryEmbedding& emb = pair.embedding;
  const int s = pair.order.s;
  const int theta = pair.census.uniform ? pair.census.theta : 0;
  if (theta < 1) throw HypothesisError("condition (C) sampling needs a uniform theta census");
  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };

  std::vector<int> outside_lines;
  for (int l = 0; l < g.line_count(); ++l)
    if (!emb.contains_line(l)) outside_lines.push_back(l);

  auto meeting_line = [&](int p, int line) -> std::pair<int, int> {
    for (int q : g.points_on(line)) {
      if (q == p) return {-1, -1};
      if (auto through = g.line_through(p, q)) return {*through, q};
    }
    return {-1, -1};
  };

  ConditionCSample out;
  const bool multi_possible = theta >= 2;
  while (out.attempts < max_attempts) {
    const bool need_single = static_cast<int>(out.single.size()) < per_kind;
    const bool need_multi = multi_possible && static_cast<int>(out.multi.size()) < per_kind;
    if (!need_single && !need_multi) break;
    ++out.attempts;
    const bool multi = need_multi && (!need_single || (out.attempts % 2 == 0));
    const int r = multi ? 2 + pick(theta - 1) : 1;

    const Rosette& ros = pair.rosettes[pick(static_cast<int>(pair.rosettes.size()))];
    std::vector<int> witnesses = ros.witness_lines;
    if (static_cast<int>(witnesses.size()) < r) continue;
    std::shuffle(witnesses.begin(), witnesses.end(), rng);
    ConditionCInstance inst;
    inst.M.assign(witnesses.begin(), witnesses.begin() + r);
    std::sort(inst.M.begin(), inst.M.end());
    inst.x0 = ros.base_point;

    inst.L = outside_lines[pick(static_cast<int>(outside_lines.size()))];
    bool concurrent = false;
    for (int m : inst.M) {
      if (m == inst.L) concurrent = true;
      for (int p : g.points_on(m))
        if (g.incident(p, inst.L)) concurrent = true;
    }
    if (concurrent) continue;

    const bool strict = reading == ConditionCReading::ProofImplied;
    int l0 = -1;
    for (int p : g.points_on(inst.L))
      if (emb.contains_point(p)) l0 = p;
    const int alpha = s - 1 + pick(2);
    std::vector<std::pair<int, int>> affine;  // (point, owning M index)
    for (int i = 0; i < r; ++i)
      for (int p : g.points_on(inst.M[i]))
        if (!emb.contains_point(p) && !(strict && l0 >= 0 && g.collinear(p, l0))) affine.emplace_back(p, i);
    std::shuffle(affine.begin(), affine.end(), rng);
    if (static_cast<int>(affine.size()) < alpha) continue;
    std::vector<char> hit(r, 0);
    for (int k = 0; k < alpha; ++k) {
      inst.x.push_back(affine[k].first);
      hit[affine[k].second] = 1;
    }
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) continue;
    if (strict) {
      std::vector<int> proj;
      for (int p : inst.x) proj.push_back(pair.point_projection[pair.ambient_point_to_a[p]]);
      std::sort(proj.begin(), proj.end());
      if (std::adjacent_find(proj.begin(), proj.end()) != proj.end()) continue;
    }
    std::sort(inst.x.begin(), inst.x.end());

    std::vector<int> meets;
    bool broken = false;
    std::vector<int> sources{inst.x0};
    sources.insert(sources.end(), inst.x.begin(), inst.x.end());
    for (int p : sources) {
      auto [n, meet] = meeting_line(p, inst.L);
      if (n < 0) {
        broken = true;
        break;
      }
      inst.N.push_back(n);
      meets.push_back(meet);
    }
    if (broken) continue;
    std::vector<int> sorted_meets = meets;
    std::sort(sorted_meets.begin(), sorted_meets.end());
    if (std::adjacent_find(sorted_meets.begin(), sorted_meets.end()) != sorted_meets.end()) {
      ++out.degenerate;
      continue;
    }
    for (int n : inst.N)
      for (int p : g.points_on(n))
        if (emb.contains_point(p)) inst.W.push_back(p);
    std::sort(inst.W.begin(), inst.W.end());
    inst.W.erase(std::unique(inst.W.begin(), inst.W.end()), inst.W.end());
    inst.overline = emb.contains_line(inst.N[0]);
    (multi ? out.multi : out.single).push_back(std::move(inst));
  }
  return out;
}

bool condition_c_planarity(const DerivedPair& pair, const ConditionCInstance& inst) {
  return points_coplanar(*pair.ambient, inst.W);
}

}  // namespace gqcov
