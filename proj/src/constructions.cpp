#include "gqcov/constructions.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "gqcov/errors.hpp"

namespace gqcov {

namespace {

using Vec = std::vector<int>;
using Form = std::function<int(const Vec&)>;
using Orth = std::function<bool(const Vec&, const Vec&)>;

Vec add_scaled(const FiniteField& f, const Vec& y, int lambda, const Vec& x) {
  Vec out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = f.add(y[i], f.mul(lambda, x[i]));
  return out;
}

int encode(const Vec& v, int q) {
  int code = 0;
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) code = code * q + v[i];
  return code;
}

// Points satisfying on_variety; lines are spans <x,y> of orthogonal point pairs.
IncidenceStructure build_polar(const std::string& name, const FiniteField& f, int n,
                               const std::function<bool(const Vec&)>& on_variety, const Orth& orth) {
  std::vector<Vec> pts;
  for (auto& v : projective_points(f, n))
    if (on_variety(v)) pts.push_back(std::move(v));
  const int q = f.order();
  int space = 1;
  for (int i = 0; i < n; ++i) space *= q;
  std::vector<int> index(space, -1);
  for (std::size_t i = 0; i < pts.size(); ++i) index[encode(pts[i], q)] = static_cast<int>(i);

  std::vector<std::vector<int>> lines;
  const int np = static_cast<int>(pts.size());
  for (int i = 0; i < np; ++i) {
    for (int j = i + 1; j < np; ++j) {
      if (!orth(pts[i], pts[j])) continue;
      std::vector<int> line{i};
      bool keep = true;
      for (int lambda = 0; lambda < q && keep; ++lambda) {
        const Vec v = normalize_projective(f, add_scaled(f, pts[j], lambda, pts[i]));
        const int k = index[encode(v, q)];
        if (k < 0) throw ConsistencyViolation(name + ": isotropic line leaves the variety");
        if (k < j && k != i) keep = false;  // generated from its two smallest points only
        line.push_back(k);
      }
      if (keep) lines.push_back(std::move(line));
    }
  }
  Coordinates coords{f.p(), f.h(), std::move(pts)};
  return IncidenceStructure::create(name, np, std::move(lines), std::move(coords));
}

IncidenceStructure build_quadric(const std::string& name, const FiniteField& f, int n, const Form& Q) {
  auto on = [&](const Vec& v) { return Q(v) == 0; };
  auto orth = [&](const Vec& x, const Vec& y) {
    Vec s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = f.add(x[i], y[i]);
    return f.sub(f.sub(Q(s), Q(x)), Q(y)) == 0;
  };
  return build_polar(name, f, n, on, orth);
}

EmbeddedPair section(IncidenceStructure ambient, const std::function<bool(const Vec&)>& in_section) {
  auto amb = std::make_shared<const IncidenceStructure>(std::move(ambient));
  PointSet pts;
  for (int x = 0; x < amb->point_count(); ++x)
    if (in_section(amb->coordinates()->vectors[x])) pts.push_back(x);
  SubGeometryEmbedding e = full_subgeometry_on(amb, std::move(pts));
  return EmbeddedPair{amb, std::move(e)};
}

// x0^2 + a x0 x1 + b x1^2 irreducible: first (a, b) without a root.
std::pair<int, int> irreducible_binary(const FiniteField& f) {
  for (int a = 0; a < f.order(); ++a) {
    for (int b = 1; b < f.order(); ++b) {
      bool root = false;
      for (int x = 0; x < f.order() && !root; ++x)
        root = f.add(f.add(f.mul(x, x), f.mul(a, x)), b) == 0;
      if (!root) return {a, b};
    }
  }
  throw GeometryError("no irreducible binary quadratic");
}

Form q5_form(const FiniteField& f) {
  const auto [a, b] = irreducible_binary(f);
  return [&f, a, b](const Vec& x) {
    int v = f.mul(x[0], x[0]);
    v = f.add(v, f.mul(a, f.mul(x[0], x[1])));
    v = f.add(v, f.mul(b, f.mul(x[1], x[1])));
    v = f.add(v, f.mul(x[2], x[3]));
    return f.add(v, f.mul(x[4], x[5]));
  };
}

Form q4_form(const FiniteField& f) {
  return [&f](const Vec& x) {
    return f.sub(f.sub(f.mul(x[0], x[0]), f.mul(x[1], x[2])), f.mul(x[3], x[4]));
  };
}

IncidenceStructure q5(const FiniteField& f, int q) {
  return build_quadric("Q(5," + std::to_string(q) + ")", f, 6, q5_form(f));
}

IncidenceStructure q4(const FiniteField& f, int q) {
  return build_quadric("Q(4," + std::to_string(q) + ")", f, 5, q4_form(f));
}

}  // namespace

IncidenceStructure build_grid(int s) {
  if (s < 1) throw GeometryError("grid needs s >= 1");
  std::vector<std::vector<int>> lines;
  for (int r = 0; r <= s; ++r) {
    std::vector<int> row, col;
    for (int c = 0; c <= s; ++c) {
      row.push_back(r * (s + 1) + c);
      col.push_back(c * (s + 1) + r);
    }
    lines.push_back(std::move(row));
    lines.push_back(std::move(col));
  }
  return IncidenceStructure::create("grid(" + std::to_string(s) + ")", (s + 1) * (s + 1),
                                    std::move(lines));
}

IncidenceStructure build_W(int q) {
  const FiniteField f = FiniteField::of_order(q);
  auto orth = [&f](const Vec& x, const Vec& y) {
    int v = f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0]));
    v = f.add(v, f.sub(f.mul(x[2], y[3]), f.mul(x[3], y[2])));
    return v == 0;
  };
  return build_polar("W(" + std::to_string(q) + ")", f, 4, [](const Vec&) { return true; }, orth);
}

IncidenceStructure build_Q4(int q) {
  const FiniteField f = FiniteField::of_order(q);
  return q4(f, q);
}

EmbeddedPair build_Q5_with_Q4(int q) {
  const FiniteField f = FiniteField::of_order(q);
  return section(q5(f, q), [](const Vec& v) { return v[1] == 0; });
}

EmbeddedPair build_Q4_with_Q3(int q) {
  const FiniteField f = FiniteField::of_order(q);
  return section(q4(f, q), [](const Vec& v) { return v[0] == 0; });
}

EmbeddedPair build_Q5_with_Q3(int q) {
  const FiniteField f = FiniteField::of_order(q);
  return section(q5(f, q), [](const Vec& v) { return v[0] == 0 && v[1] == 0; });
}

EmbeddedPair build_H4_with_H3(int q) {
  const FiniteField f = FiniteField::of_order(q * q);
  auto conj = [&f, q](int a) { return f.pow(a, static_cast<std::uint64_t>(q)); };
  auto herm = [&](const Vec& x, const Vec& y) {
    int v = 0;
    for (std::size_t i = 0; i < x.size(); ++i) v = f.add(v, f.mul(x[i], conj(y[i])));
    return v;
  };
  auto on = [&](const Vec& x) { return herm(x, x) == 0; };
  auto orth = [&](const Vec& x, const Vec& y) { return herm(x, y) == 0; };
  const std::string name = "H(4," + std::to_string(q * q) + ")";
  return section(build_polar(name, f, 5, on, orth), [](const Vec& v) { return v[4] == 0; });
}

KantorKnuthGQ build_kantor_knuth(QClanSpec spec) {
  const FiniteField f = FiniteField::of_order(spec.q);
  const int q = f.order();
  if (f.p() == 2) throw GeometryError("Kantor-Knuth q-clan needs odd q");
  int power = 1;
  bool valid_sigma = false;
  for (int k = 0; k < f.h(); ++k, power *= f.p()) {
    if (power == spec.sigma) valid_sigma = true;
  }
  if (!valid_sigma) throw GeometryError("sigma must be p^k with 0 <= k < h");
  if (spec.m < 0) spec.m = f.first_nonsquare();
  if (spec.m <= 0 || spec.m >= q || f.is_square(spec.m)) {
    throw GeometryError("m must be a non-square of GF(" + std::to_string(q) + ")");
  }
  if (!spec.m_per_t.empty() && static_cast<int>(spec.m_per_t.size()) != q) {
    throw GeometryError("per-t m override needs q entries");
  }
  auto m_of = [&](int t) { return spec.m_per_t.empty() ? spec.m : spec.m_per_t[t]; };
  // A_t = diag(a0[t], a1[t]).
  std::vector<int> a0(q), a1(q);
  for (int t = 0; t < q; ++t) {
    a0[t] = t;
    a1[t] = f.neg(f.mul(m_of(t), f.pow(t, static_cast<std::uint64_t>(spec.sigma))));
  }
  for (int t = 0; t < q; ++t) {
    for (int u = 0; u < q; ++u) {
      if (t == u) continue;
      const int d0 = f.sub(a0[t], a0[u]), d1 = f.sub(a1[t], a1[u]);
      for (int x0 = 0; x0 < q; ++x0) {
        for (int x1 = 0; x1 < q; ++x1) {
          if (x0 == 0 && x1 == 0) continue;
          if (f.add(f.mul(d0, f.mul(x0, x0)), f.mul(d1, f.mul(x1, x1))) == 0) {
            throw GeometryError("q-clan condition fails for t=" + std::to_string(t) +
                                ", u=" + std::to_string(u));
          }
        }
      }
    }
  }

  // Group elements (a0, a1, c, b0, b1) encoded in base q.
  const int q2 = q * q, q3 = q2 * q, q5 = q3 * q2;
  auto enc = [&](int x0, int x1, int c, int y0, int y1) {
    return x0 + q * (x1 + q * (c + q * (y0 + q * y1)));
  };
  auto mul = [&](int g, int h) {
    const int ga0 = g % q, ga1 = (g / q) % q, gc = (g / q2) % q, gb0 = (g / q3) % q, gb1 = g / (q3 * q);
    const int ha0 = h % q, ha1 = (h / q) % q, hc = (h / q2) % q, hb0 = (h / q3) % q, hb1 = h / (q3 * q);
    const int dot = f.add(f.mul(gb0, ha0), f.mul(gb1, ha1));
    return enc(f.add(ga0, ha0), f.add(ga1, ha1), f.add(f.add(gc, hc), dot), f.add(gb0, hb0),
               f.add(gb1, hb1));
  };
  const int two = f.add(1, 1);
  // Subgroups indexed by t in [0, q]; t == q stands for infinity.
  std::vector<std::vector<int>> sub_a(q + 1), sub_astar(q + 1);
  for (int t = 0; t <= q; ++t) {
    for (int x0 = 0; x0 < q; ++x0) {
      for (int x1 = 0; x1 < q; ++x1) {
        if (t == q) {
          sub_a[t].push_back(enc(0, 0, 0, x0, x1));
          for (int c = 0; c < q; ++c) sub_astar[t].push_back(enc(0, 0, c, x0, x1));
        } else {
          const int quad = f.add(f.mul(a0[t], f.mul(x0, x0)), f.mul(a1[t], f.mul(x1, x1)));
          const int k0 = f.mul(two, f.mul(a0[t], x0)), k1 = f.mul(two, f.mul(a1[t], x1));
          sub_a[t].push_back(enc(x0, x1, quad, k0, k1));
          for (int c = 0; c < q; ++c) sub_astar[t].push_back(enc(x0, x1, c, k0, k1));
        }
      }
    }
  }
  auto right_cosets = [&](const std::vector<int>& sub) {
    std::vector<int> id(q5, -1);
    int next = 0;
    for (int g = 0; g < q5; ++g) {
      if (id[g] >= 0) continue;
      for (int a : sub) id[mul(a, g)] = next;
      ++next;
    }
    return id;
  };
  // Original GQ of order (q^2, q): lines A(t)g indexed t*q^3 + k, then [A(t)].
  const int coset_lines = (q + 1) * q3;
  std::vector<std::vector<int>> dual_lines;
  dual_lines.reserve(q5 + (q + 1) * q2 + 1);
  std::vector<std::vector<int>> by_element(q5);
  std::vector<std::vector<std::vector<int>>> star_cosets(q + 1);
  for (int t = 0; t <= q; ++t) {
    const std::vector<int> ca = right_cosets(sub_a[t]);
    const std::vector<int> cs = right_cosets(sub_astar[t]);
    star_cosets[t].assign(q2, {});
    std::vector<char> seen(q3, 0);
    for (int g = 0; g < q5; ++g) {
      const int line = t * q3 + ca[g];
      by_element[g].push_back(line);
      if (!seen[ca[g]]) {
        seen[ca[g]] = 1;
        star_cosets[t][cs[g]].push_back(line);
      }
    }
  }
  for (int g = 0; g < q5; ++g) dual_lines.push_back(std::move(by_element[g]));
  for (int t = 0; t <= q; ++t) {
    for (auto& members : star_cosets[t]) {
      members.push_back(coset_lines + t);
      dual_lines.push_back(std::move(members));
    }
  }
  std::vector<int> infinity;
  for (int t = 0; t <= q; ++t) infinity.push_back(coset_lines + t);
  dual_lines.push_back(infinity);

  KantorKnuthGQ out;
  out.spec = spec;
  out.classical = spec.sigma == 1 && spec.m_per_t.empty();
  const std::string name = "KK(" + std::to_string(q) + ",sigma=" + std::to_string(spec.sigma) + ")";
  out.geometry = std::make_shared<const IncidenceStructure>(
      IncidenceStructure::create(name, coset_lines + q + 1, std::move(dual_lines)));
  out.line_infinity = *out.geometry->find_line(infinity);
  return out;
}

int coordinate_rank(const IncidenceStructure& g, std::span<const int> points) {
  if (!g.coordinates()) throw GeometryError(g.name() + " carries no coordinates");
  const FiniteField f(g.coordinates()->p, g.coordinates()->h);
  std::vector<std::vector<int>> rows;
  for (int x : points) {
    g.check_point(x);
    rows.push_back(g.coordinates()->vectors[x]);
  }
  return vector_rank(f, rows);
}

bool points_coplanar(const IncidenceStructure& g, std::span<const int> points) {
  return coordinate_rank(g, points) <= 3;
}

}  // namespace gqcov
