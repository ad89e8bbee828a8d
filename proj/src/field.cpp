#include "gqcov/field.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "gqcov/errors.hpp"

namespace gqcov {

namespace {

// Conway polynomials, low-to-high, without the leading 1.
const std::map<std::pair<int, int>, std::vector<int>>& modulus_table() {
  static const std::map<std::pair<int, int>, std::vector<int>> table = {
      {{2, 2}, {1, 1}},
      {{2, 3}, {1, 1, 0}},
      {{2, 4}, {1, 1, 0, 0}},
      {{2, 5}, {1, 0, 1, 0, 0}},
      {{2, 6}, {1, 1, 0, 1, 1, 0}},
      {{3, 2}, {2, 2}},
      {{3, 3}, {1, 2, 0}},
      {{3, 4}, {2, 0, 0, 2}},
      {{5, 2}, {2, 4}},
      {{7, 2}, {3, 6}},
  };
  return table;
}

bool is_supported_prime(int p) { return p == 2 || p == 3 || p == 5 || p == 7; }

std::vector<int> digits(int a, int p, int h) {
  std::vector<int> d(h);
  for (int i = 0; i < h; ++i) {
    d[i] = a % p;
    a /= p;
  }
  return d;
}

int from_digits(const std::vector<int>& d, int p) {
  int a = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) a = a * p + d[i];
  return a;
}

}  // namespace

FiniteField::FiniteField(int p, int h) : p_(p), h_(h) {
  if (!is_supported_prime(p) || h < 1) {
    throw GeometryError("unsupported field characteristic " + std::to_string(p));
  }
  q_ = 1;
  for (int i = 0; i < h; ++i) q_ *= p;
  if (q_ > 81) throw GeometryError("field order " + std::to_string(q_) + " exceeds 81");

  std::vector<int> tail;
  if (h > 1) {
    auto it = modulus_table().find({p, h});
    if (it == modulus_table().end()) {
      throw GeometryError("no modulus for GF(" + std::to_string(p) + "^" + std::to_string(h) + ")");
    }
    tail = it->second;
  } else {
    tail = {0};
  }
  modulus_ = tail;
  modulus_.push_back(1);

  add_.assign(q_ * q_, 0);
  mul_.assign(q_ * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, -1);

  std::vector<std::vector<int>> dig(q_);
  for (int a = 0; a < q_; ++a) dig[a] = digits(a, p, h);

  for (int a = 0; a < q_; ++a) {
    std::vector<int> n(h);
    for (int i = 0; i < h; ++i) n[i] = (p - dig[a][i]) % p;
    neg_[a] = from_digits(n, p);
    for (int b = 0; b < q_; ++b) {
      std::vector<int> s(h);
      for (int i = 0; i < h; ++i) s[i] = (dig[a][i] + dig[b][i]) % p;
      add_[a * q_ + b] = from_digits(s, p);

      // Schoolbook product, then reduce by the monic modulus.
      std::vector<int> prod(2 * h - 1, 0);
      for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) prod[i + j] = (prod[i + j] + dig[a][i] * dig[b][j]) % p;
      if (h > 1) {
        for (int d = 2 * h - 2; d >= h; --d) {
          int c = prod[d];
          if (c == 0) continue;
          prod[d] = 0;
          for (int i = 0; i < h; ++i) {
            prod[d - h + i] = ((prod[d - h + i] - c * tail[i]) % p + p) % p;
          }
        }
      }
      prod.resize(h);
      mul_[a * q_ + b] = from_digits(prod, p);
    }
  }
  for (int a = 1; a < q_; ++a) {
    for (int b = 1; b < q_; ++b) {
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = b;
        break;
      }
    }
    if (inv_[a] < 0) throw GeometryError("modulus is reducible: element without inverse");
  }
}

FiniteField FiniteField::of_order(int q) {
  for (int p : {2, 3, 5, 7}) {
    int h = 0;
    int r = q;
    while (r > 1 && r % p == 0) {
      r /= p;
      ++h;
    }
    if (r == 1 && h > 0) return FiniteField(p, h);
  }
  throw GeometryError("unsupported field order " + std::to_string(q));
}

int FiniteField::inv(int a) const {
  if (a == 0) throw GeometryError("inverse of zero");
  return inv_[a];
}

int FiniteField::pow(int a, std::uint64_t e) const {
  int r = 1;
  int b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

int FiniteField::frobenius(int a, int k) const {
  std::uint64_t e = 1;
  for (int i = 0; i < k; ++i) e *= static_cast<std::uint64_t>(p_);
  return pow(a, e);
}

bool FiniteField::is_square(int a) const {
  if (a == 0) return true;
  for (int b = 1; b < q_; ++b)
    if (mul(b, b) == a) return true;
  return false;
}

int FiniteField::first_nonsquare() const {
  for (int a = 1; a < q_; ++a)
    if (!is_square(a)) return a;
  return -1;
}

bool FiniteField::verify_axioms_exhaustive() const {
  for (int a = 0; a < q_; ++a) {
    if (add(a, 0) != a || mul(a, 1) != a || add(a, neg(a)) != 0) return false;
    if (a != 0 && mul(a, inv_[a]) != 1) return false;
    for (int b = 0; b < q_; ++b) {
      if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a)) return false;
      for (int c = 0; c < q_; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c))) return false;
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) return false;
      }
    }
  }
  return true;
}

bool FiniteField::verify_axioms_sampled(int samples) const {
  for (int a = 0; a < q_; ++a) {
    if (add(a, 0) != a || mul(a, 1) != a || add(a, neg(a)) != 0) return false;
    if (a != 0 && mul(a, inv_[a]) != 1) return false;
  }
  // Deterministic LCG so repeated runs check the same triples.
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  auto next = [&] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<int>((state >> 33) % static_cast<std::uint64_t>(q_));
  };
  for (int i = 0; i < samples; ++i) {
    int a = next(), b = next(), c = next();
    if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a)) return false;
    if (add(add(a, b), c) != add(a, add(b, c))) return false;
    if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
    if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) return false;
  }
  return true;
}

int vector_rank(const FiniteField& f, std::span<const std::vector<int>> rows) {
  std::vector<std::vector<int>> m(rows.begin(), rows.end());
  if (m.empty()) return 0;
  const int cols = static_cast<int>(m.front().size());
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(m.size()); ++r) {
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    const int iv = f.inv(m[rank][c]);
    for (int& x : m[rank]) x = f.mul(x, iv);
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const int factor = m[r][c];
      for (int k = 0; k < cols; ++k) m[r][k] = f.sub(m[r][k], f.mul(factor, m[rank][k]));
    }
    ++rank;
  }
  return rank;
}

std::vector<int> normalize_projective(const FiniteField& f, std::vector<int> v) {
  auto it = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
  if (it == v.end()) throw GeometryError("zero vector has no projective point");
  const int iv = f.inv(*it);
  for (int& x : v) x = f.mul(x, iv);
  return v;
}

std::vector<std::vector<int>> projective_points(const FiniteField& f, int n) {
  std::vector<std::vector<int>> out;
  const int q = f.order();
  // Leading 1 at position lead, zeros before, anything after.
  for (int lead = 0; lead < n; ++lead) {
    const int free = n - lead - 1;
    int count = 1;
    for (int i = 0; i < free; ++i) count *= q;
    for (int code = 0; code < count; ++code) {
      std::vector<int> v(n, 0);
      v[lead] = 1;
      int c = code;
      for (int i = n - 1; i > lead; --i) {
        v[i] = c % q;
        c /= q;
      }
      out.push_back(std::move(v));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gqcov
