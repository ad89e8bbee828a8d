#include "gqcov/graph_search.hpp"

#include <algorithm>
#include <numeric>
#include <span>

#include "gqcov/errors.hpp"

namespace gqcov {

void ColoredGraph::add_edge(int u, int v) {
  adj[u].push_back(v);
  adj[v].push_back(u);
}

void ColoredGraph::finalize() {
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
}

bool ColoredGraph::has_edge(int u, int v) const {
  return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

IsomorphismSearch::IsomorphismSearch(const ColoredGraph& g1, const ColoredGraph& g2, long node_budget)
    : g1_(g1), g2_(g2), n_(g1.n), budget_(node_budget) {}

// Joint refinement of both copies to the coarsest equitable partition. Colours
// are renumbered by sorted signature, so equal labels mean the same thing in
// both copies. Returns false as soon as some colour class is unbalanced.
bool IsomorphismSearch::refine(std::vector<int>& col) const {
  const int total = 2 * n_;
  std::vector<std::vector<int>> sig(total);
  std::vector<int> order(total);
  int classes = -1;
  for (;;) {
    for (int v = 0; v < total; ++v) {
      const auto& nb = v < n_ ? g1_.adj[v] : g2_.adj[v - n_];
      const int shift = v < n_ ? 0 : n_;
      sig[v].clear();
      sig[v].push_back(col[v]);
      for (int u : nb) sig[v].push_back(col[u + shift]);
      std::sort(sig[v].begin() + 1, sig[v].end());
    }
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (sig[a] != sig[b]) return sig[a] < sig[b];
      return a < b;
    });
    int next = 0;
    std::vector<int> fresh(total);
    std::vector<int> count1, count2;
    for (int i = 0; i < total; ++i) {
      if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++next;
      fresh[order[i]] = next;
    }
    const int now = next + 1;
    count1.assign(now, 0);
    count2.assign(now, 0);
    for (int v = 0; v < total; ++v) (v < n_ ? count1 : count2)[fresh[v]]++;
    col.swap(fresh);
    if (count1 != count2) return false;
    if (now == classes) return true;
    classes = now;
  }
}

int IsomorphismSearch::target_cell(const std::vector<int>& col) const {
  std::vector<int> count(2 * n_ + 1, 0);
  for (int v = 0; v < n_; ++v) ++count[col[v]];
  for (int c = 0; c < static_cast<int>(count.size()); ++c)
    if (count[c] >= 2) return c;
  return -1;
}

void IsomorphismSearch::individualize(std::vector<int>& col, int a, int b) {
  const int fresh = *std::max_element(col.begin(), col.end()) + 1;
  col[a] = fresh;
  col[b] = fresh;
}

bool IsomorphismSearch::check_leaf(const std::vector<int>& col, std::vector<int>& map) const {
  std::vector<int> by_color(2 * n_ + 1, -1);
  for (int w = n_; w < 2 * n_; ++w) by_color[col[w]] = w - n_;
  map.assign(n_, -1);
  for (int v = 0; v < n_; ++v) map[v] = by_color[col[v]];
  for (int v = 0; v < n_; ++v) {
    if (map[v] < 0 || g1_.color[v] != g2_.color[map[v]]) return false;
    if (g1_.adj[v].size() != g2_.adj[map[v]].size()) return false;
    for (int u : g1_.adj[v])
      if (!g2_.has_edge(map[v], map[u])) return false;
  }
  return true;
}

bool IsomorphismSearch::dfs(std::vector<int> col, std::span<const std::pair<int, int>> forced,
                            const std::function<bool(const std::vector<int>&)>& visit) {
  if (++stats_.nodes > budget_) throw BudgetExceeded("search node budget exhausted");
  if (!refine(col)) return true;
  const int c = target_cell(col);
  if (c < 0) {
    std::vector<int> map;
    if (!check_leaf(col, map)) return true;
    ++stats_.leaves;
    return visit(map);
  }
  int a = -1;
  std::vector<int> candidates;
  if (!forced.empty()) {
    a = forced.front().first;
    candidates.push_back(forced.front().second);
    if (col[a] != col[candidates[0]]) return true;
  } else {
    for (int v = 0; v < n_ && a < 0; ++v)
      if (col[v] == c) a = v;
    for (int w = n_; w < 2 * n_; ++w)
      if (col[w] == c) candidates.push_back(w);
  }
  auto rest = forced.empty() ? forced : forced.subspan(1);
  for (int b : candidates) {
    std::vector<int> next = col;
    individualize(next, a, b);
    if (!dfs(std::move(next), rest, visit)) return false;
  }
  return true;
}

void IsomorphismSearch::for_each(const std::function<bool(const std::vector<int>&)>& visit) {
  if (g1_.n != g2_.n) return;
  std::vector<int> col(2 * n_);
  for (int v = 0; v < n_; ++v) {
    col[v] = g1_.color[v];
    col[v + n_] = g2_.color[v];
  }
  dfs(std::move(col), {}, visit);
}

std::optional<std::vector<int>> IsomorphismSearch::find_one() {
  std::optional<std::vector<int>> out;
  for_each([&](const std::vector<int>& m) {
    out = m;
    return false;
  });
  return out;
}

std::vector<std::vector<int>> IsomorphismSearch::find_all() {
  std::vector<std::vector<int>> out;
  for_each([&](const std::vector<int>& m) {
    out.push_back(m);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

struct AutomorphismSearch {
  static AutomorphismResult run(const ColoredGraph& g, long node_budget) {
    IsomorphismSearch s(g, g, node_budget);
    const int n = g.n;
    AutomorphismResult res;
    std::vector<int> col(2 * n);
    for (int v = 0; v < n; ++v) col[v] = col[v + n] = g.color[v];
    const std::vector<int> initial = col;

    // First path: always map the chosen vertex to its own copy.
    std::vector<std::vector<int>> cells;
    for (;;) {
      if (!s.refine(col)) throw ConsistencyViolation("identity path is unbalanced");
      const int c = s.target_cell(col);
      if (c < 0) break;
      int a = -1;
      std::vector<int> cell;
      for (int v = 0; v < n; ++v) {
        if (col[v] != c) continue;
        if (a < 0) a = v;
        cell.push_back(v);
      }
      res.base.push_back(a);
      cells.push_back(std::move(cell));
      IsomorphismSearch::individualize(col, a, a + n);
    }

    const int m = static_cast<int>(res.base.size());
    res.orbit_sizes.assign(m, 1);
    auto orbit_of = [&](int x) {
      std::vector<char> seen(n, 0);
      std::vector<int> orbit{x};
      seen[x] = 1;
      for (std::size_t i = 0; i < orbit.size(); ++i)
        for (const Perm& p : res.generators)
          if (!seen[p[orbit[i]]]) {
            seen[p[orbit[i]]] = 1;
            orbit.push_back(p[orbit[i]]);
          }
      return seen;
    };
    for (int k = m - 1; k >= 0; --k) {
      std::vector<char> in_orbit = orbit_of(res.base[k]);
      for (int c : cells[k]) {
        if (in_orbit[c]) continue;
        std::vector<std::pair<int, int>> forced;
        for (int j = 0; j < k; ++j) forced.emplace_back(res.base[j], res.base[j] + n);
        forced.emplace_back(res.base[k], c + n);
        std::optional<Perm> found;
        s.dfs(initial, forced, [&](const std::vector<int>& map) {
          found = map;
          return false;
        });
        if (found) {
          res.generators.push_back(std::move(*found));
          in_orbit = orbit_of(res.base[k]);
        }
      }
      int size = 0;
      for (char b : in_orbit) size += b;
      res.orbit_sizes[k] = size;
    }
    res.order = 1;
    for (int sz : res.orbit_sizes) {
      if (res.order > UINT64_MAX / static_cast<std::uint64_t>(sz)) throw BudgetExceeded("group order exceeds 64 bits");
      res.order *= static_cast<std::uint64_t>(sz);
    }
    return res;
  }
};

AutomorphismResult graph_automorphisms(const ColoredGraph& g, long node_budget) {
  return AutomorphismSearch::run(g, node_budget);
}

}  // namespace gqcov
