#include "gqcov/spg.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace gqcov {

namespace {

std::string pair_text(const char* a, int x, const char* b, int y) {
  return std::string(a) + " " + std::to_string(x) + ", " + b + " " + std::to_string(y);
}

}  // namespace

SPGResult verify_spg(const IncidenceStructure& g, const std::optional<SPGParameters>& expected) {
  SPGResult res;
  const int np = g.point_count();
  const int nl = g.line_count();
  if (np == 0 || nl == 0) {
    res.failure = "empty";
    return res;
  }

  const int line_size = static_cast<int>(g.points_on(0).size());
  for (int l = 0; l < nl; ++l) {
    if (static_cast<int>(g.points_on(l).size()) != line_size) {
      res.failure = "line size";
      res.witness = pair_text("line", 0, "line", l);
      return res;
    }
  }
  const int degree = static_cast<int>(g.lines_through(0).size());
  for (int p = 0; p < np; ++p) {
    if (static_cast<int>(g.lines_through(p).size()) != degree) {
      res.failure = "point degree";
      res.witness = pair_text("point", 0, "point", p);
      return res;
    }
  }

  // Two points on at most one line; builds the adjacency matrix on the way.
  std::vector<std::vector<char>> adj(np, std::vector<char>(np, 0));
  for (int p = 0; p < np; ++p) {
    for (int l : g.lines_through(p)) {
      for (int y : g.points_on(l)) {
        if (y == p) continue;
        if (adj[p][y]) {
          res.failure = "two lines through a point pair";
          res.witness = pair_text("point", p, "point", y);
          return res;
        }
        adj[p][y] = 1;
      }
    }
  }

  int alpha = 0;
  for (int l = 0; l < nl; ++l) {
    auto row = g.points_on(l);
    for (int p = 0; p < np; ++p) {
      if (std::binary_search(row.begin(), row.end(), p)) continue;
      int c = 0;
      for (int y : row) c += adj[p][y];
      if (c == 0) continue;
      if (alpha == 0) alpha = c;
      if (c != alpha) {
        res.failure = "neighbours on a non-incident line";
        res.witness = pair_text("point", p, "line", l);
        return res;
      }
    }
  }
  res.alpha_vacuous = alpha == 0;

  int mu = -1;
  for (int x = 0; x < np; ++x) {
    for (int y = x + 1; y < np; ++y) {
      if (adj[x][y]) continue;
      int c = 0;
      for (int z = 0; z < np; ++z) c += adj[x][z] & adj[y][z];
      if (mu < 0) mu = c;
      if (c != mu) {
        res.failure = "common neighbours of a non-collinear pair";
        res.witness = pair_text("point", x, "point", y);
        return res;
      }
    }
  }
  res.mu_vacuous = mu < 0;

  SPGParameters params{line_size - 1, degree - 1, alpha, std::max(mu, 0)};
  if (expected) {
    if (res.alpha_vacuous) params.alpha_star = expected->alpha_star;
    if (res.mu_vacuous) params.mu_star = expected->mu_star;
    res.matches_expected = params == *expected;
    if (!res.matches_expected) res.failure = "parameters differ from expected";
  }
  res.params = params;
  return res;
}

SPGParameters predicted_spg(const GQOrder& order, const GQOrder& sub_order, int theta) {
  return {order.s - 1, order.t, theta, theta * (order.t - sub_order.t)};
}

HypothesisGate hypothesis_gate(const SubGeometryEmbedding& emb, const ThetaCensus& census) {
  HypothesisGate gate;
  if (!emb.sub_order()) {
    gate.detail = "subgeometry is not a generalized quadrangle";
    return gate;
  }
  auto ambient = verify_gq_axioms(emb.ambient());
  if (!ambient.ok()) {
    gate.detail = "ambient is not a generalized quadrangle";
    return gate;
  }
  const int s = ambient.order->s;
  const int t = ambient.order->t;
  const int tp = emb.sub_order()->t;
  gate.t_prime_not_one = tp != 1;
  gate.t_equals_s_t_prime = t == s * tp;
  gate.uniform_theta_above_one = census.uniform && census.theta > 1;
  gate.theta_relation = census.uniform && (census.theta - 1) * t == s * s;
  gate.passes = gate.t_prime_not_one && gate.t_equals_s_t_prime && gate.theta_relation &&
                gate.uniform_theta_above_one;
  if (!gate.t_prime_not_one)
    gate.detail = "t' = 1";
  else if (!gate.t_equals_s_t_prime)
    gate.detail = "t != s t'";
  else if (!gate.uniform_theta_above_one)
    gate.detail = "census not uniform with theta > 1";
  else if (!gate.theta_relation)
    gate.detail = "(theta - 1) t != s^2";
  return gate;
}

WitnessLineReport witness_line_independence(const DerivedPair& pair) {
  WitnessLineReport rep;
  const IncidenceStructure& e = *pair.E;
  const int ne = e.point_count();
  for (std::size_t r = 0; r < pair.rosettes.size(); ++r) {
    const Rosette& ros = pair.rosettes[r];
    ++rep.rosettes;
    std::optional<std::vector<int>> reference;
    for (int L : ros.witness_lines) {
      ++rep.witness_lines;
      std::vector<int> ovoids;
      for (int y : pair.ambient->points_on(L)) {
        int a = pair.ambient_point_to_a[y];
        if (a >= 0) ovoids.push_back(pair.point_projection[a]);
      }
      std::sort(ovoids.begin(), ovoids.end());
      ovoids.erase(std::unique(ovoids.begin(), ovoids.end()), ovoids.end());
      if (ovoids != ros.ovoids) {
        rep.witness = "rosette " + std::to_string(r) + " differs from witness line " + std::to_string(L);
        return rep;
      }
      std::vector<int> profile(ne, 0);
      for (int p = 0; p < ne; ++p) {
        if (std::binary_search(ovoids.begin(), ovoids.end(), p)) continue;
        for (int o : ovoids) profile[p] += e.collinear(p, o) ? 1 : 0;
      }
      if (!reference) {
        reference = std::move(profile);
      } else if (*reference != profile) {
        rep.witness = "neighbour profile of rosette " + std::to_string(r) + " depends on line " + std::to_string(L);
        return rep;
      }
    }
  }
  rep.independent = true;
  return rep;
}

}  // namespace gqcov
