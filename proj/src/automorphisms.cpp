#include "gqcov/automorphisms.hpp"

#include <algorithm>
#include <map>

#include "gqcov/errors.hpp"

namespace gqcov {

namespace {

std::vector<int> restrict_block(const Perm& p, int from, int count) {
  std::vector<int> out(count);
  for (int i = 0; i < count; ++i) out[i] = p[from + i] - from;
  return out;
}

// Restriction of an ambient combined-domain permutation to the subquadrangle,
// in sub() indices; nullopt if it does not stabilize it.
std::optional<Perm> restrict_to_sub(const Perm& p, const SubGeometryEmbedding& emb) {
  const int pc = emb.ambient().point_count();
  const IncidenceStructure& sub = emb.sub();
  const int np = sub.point_count(), nl = sub.line_count();
  Perm out(np + nl);
  for (int i = 0; i < np; ++i) {
    const int img = p[emb.ambient_point(i)];
    if (!emb.contains_point(img)) return std::nullopt;
    out[i] = emb.sub_point(img);
  }
  for (int j = 0; j < nl; ++j) {
    const int img = p[pc + emb.ambient_line(j)] - pc;
    if (!emb.contains_line(img)) return std::nullopt;
    out[np + j] = np + emb.sub_line(img);
  }
  return out;
}

std::vector<Perm> search_extensions(const SubGeometryEmbedding& emb, const std::vector<int>& phi, bool all,
                                    long node_budget, long& nodes) {
  const IncidenceStructure& g = emb.ambient();
  const IncidenceStructure& sub = emb.sub();
  const int np = sub.point_count();
  if (static_cast<int>(phi.size()) != np || !gqcov::is_permutation(phi))
    throw GeometryError("phi is not a permutation of the subquadrangle's points");
  auto phi_lines = induced_line_map(sub, sub, phi);
  if (!phi_lines) throw GeometryError("phi is not an automorphism of the subquadrangle");

  ColoredGraph g1 = incidence_graph(g);
  ColoredGraph g2 = g1;
  const int pc = g.point_count();
  for (int i = 0; i < np; ++i) {
    g1.color[emb.ambient_point(i)] = 2 + i;
    g2.color[emb.ambient_point(phi[i])] = 2 + i;
  }
  for (int j = 0; j < sub.line_count(); ++j) {
    g1.color[pc + emb.ambient_line(j)] = 2 + np + j;
    g2.color[pc + emb.ambient_line((*phi_lines)[j])] = 2 + np + j;
  }
  IsomorphismSearch search(g1, g2, node_budget);
  std::vector<Perm> out;
  search.for_each([&](const std::vector<int>& m) {
    out.push_back(m);
    return all;
  });
  nodes += search.stats().nodes;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ColoredGraph incidence_graph(const IncidenceStructure& g) {
  const int pc = g.point_count();
  ColoredGraph out(pc + g.line_count());
  for (int l = 0; l < g.line_count(); ++l) {
    out.color[pc + l] = 1;
    for (int x : g.points_on(l)) out.add_edge(x, pc + l);
  }
  out.finalize();
  return out;
}

std::vector<int> point_part(const Perm& p, int point_count) {
  return std::vector<int>(p.begin(), p.begin() + point_count);
}

std::vector<int> line_part(const Perm& p, int point_count) {
  return restrict_block(p, point_count, static_cast<int>(p.size()) - point_count);
}

std::optional<Perm> lift_point_map(const IncidenceStructure& g, const std::vector<int>& point_map) {
  if (static_cast<int>(point_map.size()) != g.point_count() || !gqcov::is_permutation(point_map)) return std::nullopt;
  auto lines = induced_line_map(g, g, point_map);
  if (!lines || !gqcov::is_permutation(*lines)) return std::nullopt;
  Perm out = point_map;
  for (int l : *lines) out.push_back(g.point_count() + l);
  return out;
}

GeometryMorphism as_morphism(std::shared_ptr<const IncidenceStructure> g, const Perm& p) {
  const int pc = g->point_count();
  return GeometryMorphism{g, g, point_part(p, pc), line_part(p, pc)};
}

bool is_collineation(const IncidenceStructure& g, const Perm& p) {
  const int pc = g.point_count();
  if (static_cast<int>(p.size()) != pc + g.line_count() || !gqcov::is_permutation(p)) return false;
  for (int x = 0; x < pc; ++x)
    if (p[x] >= pc) return false;
  for (int l = 0; l < g.line_count(); ++l)
    for (int x : g.points_on(l))
      if (!g.incident(p[x], p[pc + l] - pc)) return false;
  return true;
}

PermutationGroup automorphism_group(const IncidenceStructure& g, long node_budget) {
  const AutomorphismResult res = graph_automorphisms(incidence_graph(g), node_budget);
  for (const Perm& p : res.generators)
    if (!is_collineation(g, p)) throw ConsistencyViolation("search returned a non-automorphism");
  PermutationGroup group(g.point_count() + g.line_count(), res.generators);
  if (group.order() != res.order) throw ConsistencyViolation("group order differs between search and chain");
  return group;
}

PermutationGroup subgeometry_stabilizer(const SubGeometryEmbedding& emb, long node_budget) {
  const IncidenceStructure& g = emb.ambient();
  ColoredGraph graph = incidence_graph(g);
  for (int x : emb.points()) graph.color[x] = 2;
  for (int l : emb.lines()) graph.color[g.point_count() + l] = 3;
  const AutomorphismResult res = graph_automorphisms(graph, node_budget);
  return PermutationGroup(g.point_count() + g.line_count(), res.generators);
}

PermutationGroup elementwise_kernel(const SubGeometryEmbedding& emb, long node_budget) {
  const IncidenceStructure& g = emb.ambient();
  long nodes = 0;
  std::vector<int> id(emb.sub().point_count());
  for (int i = 0; i < static_cast<int>(id.size()); ++i) id[i] = i;
  std::vector<Perm> all = search_extensions(emb, id, true, node_budget, nodes);
  PermutationGroup kernel(g.point_count() + g.line_count(), all);
  if (kernel.order() != all.size()) throw ConsistencyViolation("elementwise kernel is not closed");
  return kernel;
}

InducedAction induced_on_sub(const PermutationGroup& stabilizer, const SubGeometryEmbedding& emb,
                             const PermutationGroup& kernel) {
  InducedAction out;
  std::vector<Perm> images;
  const auto& gens = stabilizer.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto r = restrict_to_sub(gens[i], emb);
    if (!r || !is_collineation(emb.sub(), *r)) {
      out.rejected.push_back(static_cast<int>(i));
      continue;
    }
    images.push_back(std::move(*r));
  }
  out.image = PermutationGroup(emb.sub().point_count() + emb.sub().line_count(), images);
  const std::uint64_t total = stabilizer.order(), img = out.image.order();
  out.kernel_order = total % img == 0 ? total / img : 0;
  bool kernel_inside = true;
  for (const Perm& k : kernel.generators()) kernel_inside = kernel_inside && stabilizer.contains(k);
  out.faithful_modulo_kernel = out.rejected.empty() && kernel_inside && out.kernel_order == kernel.order();
  return out;
}

std::optional<Perm> ovoid_action(const DerivedPair& pair, const std::vector<int>& sub_point_perm) {
  const SubGeometryEmbedding& emb = pair.embedding;
  std::map<PointSet, int> index;
  for (int i = 0; i < static_cast<int>(pair.ovoids.size()); ++i) index[pair.ovoids[i].points] = i;
  const int no = static_cast<int>(pair.ovoids.size());
  Perm out(no + pair.E->line_count());
  for (int i = 0; i < no; ++i) {
    PointSet img;
    for (int p : pair.ovoids[i].points) img.push_back(emb.ambient_point(sub_point_perm[emb.sub_point(p)]));
    std::sort(img.begin(), img.end());
    auto it = index.find(img);
    if (it == index.end()) return std::nullopt;
    out[i] = it->second;
  }
  for (int j = 0; j < pair.E->line_count(); ++j) {
    std::vector<int> img;
    for (int o : pair.E->points_on(j)) img.push_back(out[o]);
    std::sort(img.begin(), img.end());
    auto found = pair.E->find_line(img);
    if (!found) return std::nullopt;
    out[no + j] = no + *found;
  }
  return out;
}

InducedAction induced_on_E(const PermutationGroup& stabilizer, const DerivedPair& pair,
                           const PermutationGroup& kernel) {
  InducedAction out;
  std::vector<Perm> images;
  const auto& gens = stabilizer.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto r = restrict_to_sub(gens[i], pair.embedding);
    std::optional<Perm> e;
    if (r) e = ovoid_action(pair, point_part(*r, pair.embedding.sub().point_count()));
    if (!e) {
      out.rejected.push_back(static_cast<int>(i));
      continue;
    }
    images.push_back(std::move(*e));
  }
  out.image = PermutationGroup(pair.E->point_count() + pair.E->line_count(), images);
  const std::uint64_t total = stabilizer.order(), img = out.image.order();
  out.kernel_order = total % img == 0 ? total / img : 0;
  bool kernel_inside = true;
  for (const Perm& k : kernel.generators()) kernel_inside = kernel_inside && stabilizer.contains(k);
  out.faithful_modulo_kernel = out.rejected.empty() && kernel_inside && out.kernel_order == kernel.order();
  return out;
}

ExtensionReport extend_automorphism(const SubGeometryEmbedding& emb, const std::vector<int>& phi, ExtensionMode mode,
                                    long node_budget) {
  ExtensionReport out;
  out.base_automorphism = phi;
  const bool all = mode == ExtensionMode::FindAll;
  out.extensions = search_extensions(emb, phi, all, node_budget, out.nodes);
  if (!all) return out;

  std::vector<int> id(phi.size());
  for (int i = 0; i < static_cast<int>(id.size()); ++i) id[i] = i;
  const std::vector<Perm> kernel = id == phi ? out.extensions : search_extensions(emb, id, true, node_budget, out.nodes);
  out.kernel_order = kernel.size();
  if (out.extensions.empty()) {
    out.bijection_with_kernel = true;
    return out;
  }
  std::vector<Perm> shifted;
  for (const Perm& k : kernel) shifted.push_back(perm_mul(out.extensions.front(), k));
  std::sort(shifted.begin(), shifted.end());
  out.bijection_with_kernel = shifted == out.extensions;
  return out;
}

AutETwoWays aut_E_two_ways(const DerivedPair& pair, bool require_hypothesis, long node_budget) {
  AutETwoWays out;
  const int u = pair.sub_order.s;
  out.hypothesis = pair.census.uniform && pair.census.theta == 2 && pair.order.s == u &&
                   pair.order.t == u * u && pair.sub_order.t == u;
  if (require_hypothesis && !out.hypothesis)
    throw HypothesisError("Aut(E) comparison needs a 2-subtended (u,u) subquadrangle of a (u,u^2) quadrangle");

  const int no = pair.E->point_count();
  std::vector<Perm> direct;
  const PermutationGroup aut_e = automorphism_group(*pair.E, node_budget);
  for (const Perm& g : aut_e.generators()) direct.push_back(point_part(g, no));
  out.direct = PermutationGroup(no, direct);

  const IncidenceStructure& sub = pair.embedding.sub();
  const int np = sub.point_count(), nl = sub.line_count();
  ColoredGraph graph(np + nl + no);
  for (int j = 0; j < nl; ++j) {
    graph.color[np + j] = 1;
    for (int x : sub.points_on(j)) graph.add_edge(x, np + j);
  }
  for (int i = 0; i < no; ++i) {
    graph.color[np + nl + i] = 2;
    for (int p : pair.ovoids[i].points) graph.add_edge(pair.embedding.sub_point(p), np + nl + i);
  }
  graph.finalize();
  std::vector<Perm> via;
  const AutomorphismResult stab = graph_automorphisms(graph, node_budget);
  for (const Perm& g : stab.generators) via.push_back(restrict_block(g, np + nl, no));
  out.via_stabilizer = PermutationGroup(no, via);

  out.order_direct = out.direct.order();
  out.order_via_stabilizer = out.via_stabilizer.order();
  out.equal = out.direct.equals(out.via_stabilizer);
  if (require_hypothesis && !out.equal) throw ConsistencyViolation("Aut(E) differs from the ovoid-set stabilizer");
  return out;
}

namespace {

// Sub-quadrangle automorphism inducing the factorization's alpha on ovoids.
std::vector<int> inducing_automorphism(const FactorizationResult& f) {
  if (f.orientation == ZetaOrientation::Forward) return f.zeta;
  std::vector<int> inv(f.zeta.size());
  for (int i = 0; i < static_cast<int>(f.zeta.size()); ++i) inv[f.zeta[i]] = i;
  return inv;
}

// pi o e agrees with gamma on every point and line of A.
bool lifts(const DerivedPair& pair, const Perm& e, const GeometryMorphism& gamma) {
  const int pc = pair.ambient->point_count();
  for (int y = 0; y < pair.A->point_count(); ++y) {
    const int img = pair.ambient_point_to_a[e[pair.a_point_to_ambient[y]]];
    if (img < 0 || pair.point_projection[img] != gamma.point_map[y]) return false;
  }
  for (int l = 0; l < pair.A->line_count(); ++l) {
    const int img = pair.ambient_line_to_a[e[pc + pair.a_line_to_ambient[l]] - pc];
    if (img < 0 || pair.line_projection[img] != gamma.line_map[l]) return false;
  }
  return true;
}

}  // namespace

HigherDecompositionReport higher_decomposition_check(const DerivedPair& pair,
                                                     const std::optional<GeometryMorphism>& gamma, long node_budget) {
  if (!pair.pi) throw HypothesisError("higher decomposition needs the canonical cover");
  HigherDecompositionReport out;
  const GeometryMorphism& pi = pair.pi->morphism;
  const PermutationGroup aut_e = automorphism_group(*pair.E, node_budget);
  for (const Perm& a : aut_e.generators()) {
    ++out.generators;
    const GeometryMorphism cover = compose(as_morphism(pair.E, a), pi);
    const FactorizationResult f = factorize_lower(pair, cover);
    const ExtensionReport ext =
        extend_automorphism(pair.embedding, inducing_automorphism(f), ExtensionMode::FindOne, node_budget);
    if (ext.extensions.empty()) {
      if (out.failure.empty()) out.failure = "generator " + std::to_string(out.generators - 1) + " does not extend";
      continue;
    }
    if (!lifts(pair, ext.extensions.front(), cover)) {
      if (out.failure.empty()) out.failure = "extension of generator " + std::to_string(out.generators - 1) +
                                             " does not induce it";
      continue;
    }
    ++out.induced;
  }
  out.verdict = out.induced == out.generators;
  if (gamma) {
    const FactorizationResult f = factorize_lower(pair, *gamma);
    const ExtensionReport ext =
        extend_automorphism(pair.embedding, inducing_automorphism(f), ExtensionMode::FindOne, node_budget);
    if (!ext.extensions.empty()) {
      out.alpha_tilde = ext.extensions.front();
      out.alpha_tilde_verified = lifts(pair, *out.alpha_tilde, *gamma);
    }
  }
  return out;
}

}  // namespace gqcov
