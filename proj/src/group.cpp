#include "gqcov/group.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "gqcov/errors.hpp"

namespace gqcov {

Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_mul(const Perm& g, const Perm& h) {
  Perm out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = h[g[i]];
  return out;
}

Perm perm_inv(const Perm& g) {
  Perm out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[g[i]] = static_cast<int>(i);
  return out;
}

bool is_identity(const Perm& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] != static_cast<int>(i)) return false;
  return true;
}

bool is_permutation(const Perm& g) {
  std::vector<char> seen(g.size(), 0);
  for (int x : g) {
    if (x < 0 || x >= static_cast<int>(g.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

PermutationGroup::PermutationGroup(int degree, std::vector<Perm> generators, std::vector<int> base_prefix)
    : degree_(degree) {
  for (auto& g : generators) {
    if (static_cast<int>(g.size()) != degree || !is_permutation(g)) {
      throw GeometryError("generator is not a permutation of degree " + std::to_string(degree));
    }
    if (!is_identity(g)) generators_.push_back(std::move(g));
  }
  build(std::move(base_prefix));
}

void PermutationGroup::rebuild_orbit(Level& level) const {
  level.orbit.assign(1, level.base_point);
  level.transversal.assign(1, identity_perm(degree_));
  level.transversal_idx.assign(degree_, -1);
  level.transversal_idx[level.base_point] = 0;
  for (std::size_t i = 0; i < level.orbit.size(); ++i) {
    const int x = level.orbit[i];
    for (const Perm& s : level.strong) {
      const int y = s[x];
      if (level.transversal_idx[y] >= 0) continue;
      level.transversal_idx[y] = static_cast<int>(level.orbit.size());
      level.orbit.push_back(y);
      level.transversal.push_back(perm_mul(level.transversal[i], s));
    }
  }
}

Perm PermutationGroup::coset_rep(int level, int point) const {
  const Level& l = chain_[level];
  return l.transversal[l.transversal_idx[point]];
}

std::pair<Perm, int> PermutationGroup::sift(Perm g, int from_level) const {
  for (int l = from_level; l < static_cast<int>(chain_.size()); ++l) {
    const int x = g[chain_[l].base_point];
    if (chain_[l].transversal_idx[x] < 0) return {std::move(g), l};
    g = perm_mul(g, perm_inv(coset_rep(l, x)));
  }
  return {std::move(g), static_cast<int>(chain_.size())};
}

void PermutationGroup::build(std::vector<int> base_prefix) {
  base_.clear();
  chain_.clear();
  for (int b : base_prefix) {
    if (b < 0 || b >= degree_) throw GeometryError("base point out of range");
    if (std::find(base_.begin(), base_.end(), b) == base_.end()) base_.push_back(b);
  }
  auto first_moved = [](const Perm& g) {
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] != static_cast<int>(i)) return static_cast<int>(i);
    return -1;
  };
  for (const Perm& g : generators_) {
    bool fixes_all = true;
    for (int b : base_)
      if (g[b] != b) fixes_all = false;
    if (fixes_all) base_.push_back(first_moved(g));
  }
  if (generators_.empty()) base_.clear();
  for (std::size_t i = 0; i < base_.size(); ++i) {
    Level level;
    level.base_point = base_[i];
    for (const Perm& g : generators_) {
      bool fixes = true;
      for (std::size_t j = 0; j < i; ++j)
        if (g[base_[j]] != base_[j]) fixes = false;
      if (fixes) level.strong.push_back(g);
    }
    rebuild_orbit(level);
    chain_.push_back(std::move(level));
  }

  int i = static_cast<int>(chain_.size()) - 1;
  while (i >= 0) {
    bool restarted = false;
    Level& level = chain_[i];
    for (std::size_t oi = 0; !restarted && oi < chain_[i].orbit.size(); ++oi) {
      const int x = level.orbit[oi];
      for (std::size_t si = 0; !restarted && si < chain_[i].strong.size(); ++si) {
        const Perm& s = level.strong[si];
        const int y = s[x];
        Perm h = perm_mul(perm_mul(level.transversal[oi], s), perm_inv(coset_rep(i, y)));
        if (is_identity(h)) continue;
        auto [r, j] = sift(std::move(h), i + 1);
        if (is_identity(r)) continue;
        if (j == static_cast<int>(chain_.size())) {
          Level fresh;
          fresh.base_point = first_moved(r);
          base_.push_back(fresh.base_point);
          chain_.push_back(std::move(fresh));
        }
        for (int l = i + 1; l <= j; ++l) {
          chain_[l].strong.push_back(r);
          rebuild_orbit(chain_[l]);
        }
        i = j;
        restarted = true;
      }
    }
    if (!restarted) --i;
  }
  // Trim trivial trailing levels.
  while (!chain_.empty() && chain_.back().orbit.size() == 1) {
    chain_.pop_back();
    base_.pop_back();
  }
}

std::uint64_t PermutationGroup::order() const {
  std::uint64_t n = 1;
  for (const Level& l : chain_) {
    const std::uint64_t k = l.orbit.size();
    if (n > UINT64_MAX / k) throw BudgetExceeded("group order exceeds 64 bits");
    n *= k;
  }
  return n;
}

std::vector<int> PermutationGroup::orbit_sizes() const {
  std::vector<int> out;
  for (const Level& l : chain_) out.push_back(static_cast<int>(l.orbit.size()));
  return out;
}

bool PermutationGroup::contains(const Perm& g) const {
  if (static_cast<int>(g.size()) != degree_ || !is_permutation(g)) return false;
  return is_identity(sift(g, 0).first);
}

bool PermutationGroup::equals(const PermutationGroup& other) const {
  if (degree_ != other.degree_ || order() != other.order()) return false;
  for (const Perm& g : generators_)
    if (!other.contains(g)) return false;
  for (const Perm& g : other.generators_)
    if (!contains(g)) return false;
  return true;
}

std::vector<std::vector<int>> PermutationGroup::orbits() const {
  std::vector<int> parent(degree_);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const Perm& g : generators_) {
    for (int x = 0; x < degree_; ++x) {
      const int a = find(x), b = find(g[x]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<int>> by_root(degree_);
  for (int x = 0; x < degree_; ++x) by_root[find(x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& o : by_root)
    if (!o.empty()) out.push_back(std::move(o));
  return out;
}

std::vector<int> PermutationGroup::orbit_of(int x) const {
  std::vector<int> orbit{x};
  std::vector<char> seen(degree_, 0);
  seen[x] = 1;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const Perm& g : generators_) {
      const int y = g[orbit[i]];
      if (!seen[y]) {
        seen[y] = 1;
        orbit.push_back(y);
      }
    }
  }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

std::vector<Perm> PermutationGroup::elements(std::uint64_t limit) const {
  if (order() > limit) throw BudgetExceeded("group too large to list");
  std::vector<Perm> out;
  // g = u_{k-1} ... u_0 with u_i from level i.
  std::function<void(std::size_t, const Perm&)> rec = [&](std::size_t level, const Perm& suffix) {
    if (level == chain_.size()) {
      out.push_back(suffix);
      return;
    }
    for (const Perm& u : chain_[level].transversal) rec(level + 1, perm_mul(u, suffix));
  };
  rec(0, identity_perm(degree_));
  std::sort(out.begin(), out.end());
  return out;
}

PermutationGroup PermutationGroup::setwise_stabilizer(std::span<const int> set, long node_budget) const {
  std::vector<char> in(degree_, 0);
  for (int x : set) in[x] = 1;
  // Rebase so the set's points come first; this makes base-image pruning bite early.
  const PermutationGroup g(degree_, generators_, std::vector<int>(set.begin(), set.end()));
  std::vector<Perm> found;
  PermutationGroup current(degree_, {});
  long nodes = 0;
  const int k = static_cast<int>(g.chain_.size());
  // g = u_{k-1} ... u_1 u_0; choose u_0 first. suffix = u_{i-1} ... u_0.
  std::function<void(int, const Perm&)> rec = [&](int i, const Perm& suffix) {
    if (++nodes > node_budget) throw BudgetExceeded("setwise stabilizer search budget exhausted");
    if (i == k) {
      for (int x = 0; x < degree_; ++x)
        if (in[x] != in[suffix[x]]) return;
      if (!current.contains(suffix)) {
        found.push_back(suffix);
        current = PermutationGroup(degree_, found);
      }
      return;
    }
    const Level& level = g.chain_[i];
    for (std::size_t oi = 0; oi < level.orbit.size(); ++oi) {
      const int image = suffix[level.orbit[oi]];
      if (in[level.base_point] != in[image]) continue;
      rec(i + 1, perm_mul(level.transversal[oi], suffix));
    }
  };
  rec(0, identity_perm(degree_));
  return current;
}

PermutationGroup PermutationGroup::from_images(int degree, const std::vector<Perm>& images) {
  return PermutationGroup(degree, images);
}

}  // namespace gqcov
