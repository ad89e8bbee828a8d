#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gqcov {

/// Permutation of {0..n-1} acting on the right: x^(gh) = (x^g)^h.
using Perm = std::vector<int>;

Perm identity_perm(int n);
/// First g, then h.
Perm perm_mul(const Perm& g, const Perm& h);
Perm perm_inv(const Perm& g);
bool is_identity(const Perm& g);
bool is_permutation(const Perm& g);

/// Permutation group given by generators, with a deterministic Schreier-Sims
/// stabilizer chain built on construction.
class PermutationGroup {
 public:
  PermutationGroup() = default;
  /// Throws GeometryError on a non-permutation or wrong degree.
  PermutationGroup(int degree, std::vector<Perm> generators, std::vector<int> base_prefix = {});

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return generators_; }
  /// Throws BudgetExceeded if the order does not fit into 64 bits.
  std::uint64_t order() const;
  const std::vector<int>& base() const { return base_; }
  std::vector<int> orbit_sizes() const;

  bool contains(const Perm& g) const;
  /// Same degree, same order, and each group contains the other's generators.
  bool equals(const PermutationGroup& other) const;

  /// Orbit partition of the domain, each orbit sorted, ordered by smallest element.
  std::vector<std::vector<int>> orbits() const;
  std::vector<int> orbit_of(int x) const;

  /// All elements; throws BudgetExceeded above the limit.
  std::vector<Perm> elements(std::uint64_t limit = 100000) const;

  /// Stabilizer of a set by backtracking over the chain with base-image pruning.
  PermutationGroup setwise_stabilizer(std::span<const int> set, long node_budget = 50'000'000) const;

  /// Image of the group under a map sending each generator to a permutation of another domain.
  static PermutationGroup from_images(int degree, const std::vector<Perm>& images);

 private:
  struct Level {
    int base_point = -1;
    std::vector<Perm> strong;          // strong generators fixing earlier base points
    std::vector<int> orbit;            // orbit of base_point, in discovery order
    std::vector<int> transversal_idx;  // per domain point: index into transversal or -1
    std::vector<Perm> transversal;     // u with base_point^u = orbit[i]
  };

  void build(std::vector<int> base_prefix);
  void rebuild_orbit(Level& level) const;
  /// Sift from the given level; returns the residue and the level where it stopped.
  std::pair<Perm, int> sift(Perm g, int from_level) const;
  Perm coset_rep(int level, int point) const;

  int degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<int> base_;
  std::vector<Level> chain_;
};

}  // namespace gqcov
