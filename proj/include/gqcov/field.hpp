#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gqcov {

/// GF(p^h) with elements encoded as integers in [0, p^h).
///
/// An element a = a_0 + a_1 x + ... + a_{h-1} x^{h-1} is stored as the base-p
/// number sum a_i p^i, so the prime subfield is {0, ..., p-1} and 0/1 are the
/// additive/multiplicative identities. Arithmetic goes through precomputed
/// tables; the modulus is a fixed monic irreducible polynomial per (p, h).
class FiniteField {
 public:
  /// Throws GeometryError for unsupported (p, h) or a reducible modulus.
  FiniteField(int p, int h);

  /// Builds GF(q) for a prime power q.
  static FiniteField of_order(int q);

  int p() const { return p_; }
  int h() const { return h_; }
  int order() const { return q_; }
  /// Low-to-high coefficients of the monic modulus (size h + 1).
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  /// Throws GeometryError on zero.
  int inv(int a) const;
  int pow(int a, std::uint64_t e) const;
  /// Frobenius power a^(p^k).
  int frobenius(int a, int k) const;

  bool is_square(int a) const;
  /// Smallest non-square (only meaningful for odd q).
  int first_nonsquare() const;

  /// Exhaustive check of the field axioms over all element pairs/triples.
  bool verify_axioms_exhaustive() const;
  /// Axiom check on a deterministic sample of triples plus full inverse check.
  bool verify_axioms_sampled(int samples) const;

 private:
  int p_;
  int h_;
  int q_;
  std::vector<int> modulus_;
  std::vector<int> add_;
  std::vector<int> mul_;
  std::vector<int> neg_;
  std::vector<int> inv_;
};

/// Rank of a list of vectors over the field (Gaussian elimination).
int vector_rank(const FiniteField& f, std::span<const std::vector<int>> rows);

/// Scales a nonzero vector so its first nonzero entry is 1.
std::vector<int> normalize_projective(const FiniteField& f, std::vector<int> v);

/// All normalized points of PG(n-1, q) (vectors of length n), in lexicographic order.
std::vector<std::vector<int>> projective_points(const FiniteField& f, int n);

}  // namespace gqcov
