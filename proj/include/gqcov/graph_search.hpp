#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gqcov/group.hpp"

namespace gqcov {

/// Undirected vertex-coloured graph. Adjacency lists are kept sorted.
struct ColoredGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;
  std::vector<int> color;

  explicit ColoredGraph(int vertices = 0) : n(vertices), adj(vertices), color(vertices, 0) {}
  void add_edge(int u, int v);
  void finalize();
  bool has_edge(int u, int v) const;
};

struct SearchStats {
  long nodes = 0;
  long leaves = 0;
};

/// Individualization-refinement search over vertex bijections g1 -> g2 that
/// preserve colours and edges. Colours are compared as plain integers.
class IsomorphismSearch {
 public:
  IsomorphismSearch(const ColoredGraph& g1, const ColoredGraph& g2, long node_budget);

  /// Calls visit on every isomorphism (in deterministic order) until it returns false.
  void for_each(const std::function<bool(const std::vector<int>&)>& visit);
  std::optional<std::vector<int>> find_one();
  std::vector<std::vector<int>> find_all();

  const SearchStats& stats() const { return stats_; }

 private:
  friend struct AutomorphismSearch;
  bool refine(std::vector<int>& col) const;
  int target_cell(const std::vector<int>& col) const;
  bool check_leaf(const std::vector<int>& col, std::vector<int>& map) const;
  bool dfs(std::vector<int> col, std::span<const std::pair<int, int>> forced,
           const std::function<bool(const std::vector<int>&)>& visit);
  static void individualize(std::vector<int>& col, int a, int b);

  const ColoredGraph& g1_;
  const ColoredGraph& g2_;
  int n_;
  long budget_;
  SearchStats stats_;
};

struct AutomorphismResult {
  std::vector<Perm> generators;
  std::vector<int> base;
  std::vector<int> orbit_sizes;
  std::uint64_t order = 1;
};

/// Generators and order of the colour-preserving automorphism group, with
/// orbit pruning along the first path.
AutomorphismResult graph_automorphisms(const ColoredGraph& g, long node_budget);

}  // namespace gqcov
