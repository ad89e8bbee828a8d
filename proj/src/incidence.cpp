#include "gqcov/incidence.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "gqcov/errors.hpp"

namespace gqcov {

std::pair<IncidenceStructure, std::vector<int>> IncidenceStructure::create_indexed(
    std::string name, int point_count, std::vector<std::vector<int>> lines,
    std::optional<Coordinates> coords) {
  if (point_count < 0) throw GeometryError("negative point count");
  if (coords && static_cast<int>(coords->vectors.size()) != point_count) {
    throw GeometryError("coordinate count does not match point count");
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto& line = lines[i];
    std::sort(line.begin(), line.end());
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (line[k] < 0 || line[k] >= point_count) {
        throw GeometryError("line " + std::to_string(i) + " has invalid point " +
                            std::to_string(line[k]));
      }
      if (k > 0 && line[k] == line[k - 1]) {
        throw GeometryError("line " + std::to_string(i) + " repeats point " +
                            std::to_string(line[k]));
      }
    }
  }
  std::vector<int> order(lines.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lines[a] < lines[b]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (lines[order[k]] == lines[order[k - 1]]) {
      throw GeometryError("repeated line: inputs " + std::to_string(order[k - 1]) + " and " +
                          std::to_string(order[k]) + " have the same points");
    }
  }
  std::vector<int> canonical_index(lines.size());
  for (std::size_t k = 0; k < order.size(); ++k) canonical_index[order[k]] = static_cast<int>(k);

  IncidenceStructure g;
  g.name_ = std::move(name);
  g.point_count_ = point_count;
  g.coords_ = std::move(coords);
  g.line_offsets_.assign(1, 0);
  g.line_offsets_.reserve(lines.size() + 1);
  std::vector<int> degree(point_count, 0);
  for (int idx : order) {
    for (int x : lines[idx]) {
      g.line_points_.push_back(x);
      ++degree[x];
    }
    g.line_offsets_.push_back(static_cast<int>(g.line_points_.size()));
  }
  g.pencil_offsets_.assign(point_count + 1, 0);
  for (int x = 0; x < point_count; ++x) g.pencil_offsets_[x + 1] = g.pencil_offsets_[x] + degree[x];
  g.pencil_lines_.assign(g.line_points_.size(), 0);
  std::vector<int> fill(g.pencil_offsets_.begin(), g.pencil_offsets_.end() - 1);
  const int nl = g.line_count();
  for (int l = 0; l < nl; ++l) {
    for (int x : g.points_on(l)) g.pencil_lines_[fill[x]++] = l;
  }
  g.words_per_row_ = (point_count + 63) / 64;
  g.collinear_bits_.assign(static_cast<std::size_t>(g.words_per_row_) * point_count, 0);
  auto set_bit = [&](int x, int y) {
    g.collinear_bits_[static_cast<std::size_t>(x) * g.words_per_row_ + (y >> 6)] |=
        std::uint64_t{1} << (y & 63);
  };
  for (int x = 0; x < point_count; ++x) set_bit(x, x);
  for (int l = 0; l < nl; ++l) {
    auto pts = g.points_on(l);
    for (int a : pts)
      for (int b : pts) set_bit(a, b);
  }
  return {std::move(g), std::move(canonical_index)};
}

IncidenceStructure IncidenceStructure::create(std::string name, int point_count,
                                              std::vector<std::vector<int>> lines,
                                              std::optional<Coordinates> coords) {
  return create_indexed(std::move(name), point_count, std::move(lines), std::move(coords)).first;
}

std::span<const int> IncidenceStructure::points_on(int line) const {
  return {line_points_.data() + line_offsets_[line],
          static_cast<std::size_t>(line_offsets_[line + 1] - line_offsets_[line])};
}

std::span<const int> IncidenceStructure::lines_through(int point) const {
  return {pencil_lines_.data() + pencil_offsets_[point],
          static_cast<std::size_t>(pencil_offsets_[point + 1] - pencil_offsets_[point])};
}

bool IncidenceStructure::incident(int point, int line) const {
  auto pts = points_on(line);
  return std::binary_search(pts.begin(), pts.end(), point);
}

bool IncidenceStructure::collinear(int x, int y) const {
  return (collinear_bits_[static_cast<std::size_t>(x) * words_per_row_ + (y >> 6)] >> (y & 63)) & 1;
}

std::optional<int> IncidenceStructure::line_through(int x, int y) const {
  if (x == y || !collinear(x, y)) return std::nullopt;
  for (int l : lines_through(x))
    if (incident(y, l)) return l;
  return std::nullopt;
}

std::optional<int> IncidenceStructure::find_line(std::span<const int> sorted_points) const {
  int lo = 0, hi = line_count();
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    auto pts = points_on(mid);
    if (std::lexicographical_compare(pts.begin(), pts.end(), sorted_points.begin(),
                                     sorted_points.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < line_count()) {
    auto pts = points_on(lo);
    if (std::equal(pts.begin(), pts.end(), sorted_points.begin(), sorted_points.end())) return lo;
  }
  return std::nullopt;
}

IncidenceStructure IncidenceStructure::renamed(std::string name) const {
  IncidenceStructure g = *this;
  g.name_ = std::move(name);
  return g;
}

IncidenceStructure IncidenceStructure::dual(std::string name) const {
  std::vector<std::vector<int>> lines(point_count_);
  for (int x = 0; x < point_count_; ++x) {
    auto pencil = lines_through(x);
    lines[x].assign(pencil.begin(), pencil.end());
  }
  return create(std::move(name), line_count(), std::move(lines));
}

std::vector<std::vector<int>> IncidenceStructure::lines() const {
  std::vector<std::vector<int>> out;
  out.reserve(line_count());
  for (int l = 0; l < line_count(); ++l) {
    auto pts = points_on(l);
    out.emplace_back(pts.begin(), pts.end());
  }
  return out;
}

void IncidenceStructure::check_point(int x) const {
  if (x < 0 || x >= point_count_) throw GeometryError("invalid point index " + std::to_string(x));
}

void IncidenceStructure::check_line(int l) const {
  if (l < 0 || l >= line_count()) throw GeometryError("invalid line index " + std::to_string(l));
}

bool IncidenceStructure::operator==(const IncidenceStructure& other) const {
  return point_count_ == other.point_count_ && line_offsets_ == other.line_offsets_ &&
         line_points_ == other.line_points_;
}

namespace {

int mode_of(const std::vector<int>& values) {
  std::vector<int> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  int best = sorted.front(), best_count = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (static_cast<int>(j - i) > best_count) {
      best_count = static_cast<int>(j - i);
      best = sorted[i];
    }
    i = j;
  }
  return best;
}

}  // namespace

GQCheck verify_gq_axioms(const IncidenceStructure& g) {
  if (g.point_count() == 0 || g.line_count() == 0) {
    throw GeometryError("empty incidence structure has no GQ order");
  }
  GQCheck out;
  const int np = g.point_count();
  const int nl = g.line_count();

  // (a) constant point degree t+1 and line size s+1.
  std::vector<int> degrees(np), sizes(nl);
  for (int x = 0; x < np; ++x) degrees[x] = static_cast<int>(g.lines_through(x).size());
  for (int l = 0; l < nl; ++l) sizes[l] = static_cast<int>(g.points_on(l).size());
  const int deg = mode_of(degrees);
  const int size = mode_of(sizes);
  for (int x = 0; x < np; ++x) {
    if (degrees[x] != deg) {
      out.failure = AxiomFailure{'a', x, -1,
                                 "point " + std::to_string(x) + " is on " +
                                     std::to_string(degrees[x]) + " lines, expected " +
                                     std::to_string(deg)};
      return out;
    }
  }
  for (int l = 0; l < nl; ++l) {
    if (sizes[l] != size) {
      out.failure = AxiomFailure{'a', -1, l,
                                 "line " + std::to_string(l) + " has " + std::to_string(sizes[l]) +
                                     " points, expected " + std::to_string(size)};
      return out;
    }
  }
  if (deg < 2 || size < 2) {
    out.failure = AxiomFailure{'a', 0, -1, "order parameters below 1"};
    return out;
  }
  const GQOrder order{size - 1, deg - 1};

  // (c) two distinct points share at most one line.
  std::vector<int> stamp(np, -1);
  for (int x = 0; x < np; ++x) {
    for (int l : g.lines_through(x)) {
      for (int y : g.points_on(l)) {
        if (y == x) continue;
        if (stamp[y] == x) {
          out.failure = AxiomFailure{'c', x, l,
                                     "points " + std::to_string(x) + " and " + std::to_string(y) +
                                         " share more than one line"};
          return out;
        }
        stamp[y] = x;
      }
    }
  }

  // (b) every non-incident pair (x, L): exactly one point of L collinear with x.
  std::vector<int> hit(nl, -1);
  for (int x = 0; x < np; ++x) {
    int distinct = 0;
    for (int l : g.lines_through(x)) {
      for (int y : g.points_on(l)) {
        if (y == x) continue;
        for (int m : g.lines_through(y)) {
          if (m == l) continue;
          if (hit[m] == x) {
            out.failure = AxiomFailure{'b', x, m,
                                       "line " + std::to_string(m) +
                                           " has two points collinear with point " +
                                           std::to_string(x)};
            return out;
          }
          hit[m] = x;
          ++distinct;
        }
      }
    }
    if (distinct != nl - deg) {
      for (int m = 0; m < nl; ++m) {
        if (hit[m] != x && !g.incident(x, m)) {
          out.failure = AxiomFailure{'b', x, m,
                                     "line " + std::to_string(m) +
                                         " has no point collinear with point " +
                                         std::to_string(x)};
          return out;
        }
      }
    }
  }
  out.order = order;
  return out;
}

PointSet perp(const IncidenceStructure& g, int x) {
  g.check_point(x);
  PointSet out{x};
  for (int l : g.lines_through(x))
    for (int y : g.points_on(l))
      if (y != x) out.push_back(y);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PointSet perp_set(const IncidenceStructure& g, std::span<const int> ys) {
  for (int y : ys) g.check_point(y);
  PointSet out;
  for (int z = 0; z < g.point_count(); ++z) {
    bool all = true;
    for (int y : ys) {
      if (!g.collinear(z, y)) {
        all = false;
        break;
      }
    }
    if (all) out.push_back(z);
  }
  return out;
}

PointSet biperp(const IncidenceStructure& g, std::span<const int> ys) {
  const PointSet p = perp_set(g, ys);
  return perp_set(g, p);
}

PointSet closure_cl(const IncidenceStructure& g, int u, int v) {
  g.check_point(u);
  g.check_point(v);
  if (u == v) throw GeometryError("cl(u,v) needs distinct points");
  const int pair[2] = {u, v};
  const PointSet bp = biperp(g, pair);
  PointSet out;
  for (int w = 0; w < g.point_count(); ++w) {
    for (int b : bp) {
      if (g.collinear(w, b)) {
        out.push_back(w);
        break;
      }
    }
  }
  return out;
}

bool is_connected(const IncidenceStructure& g) {
  const int np = g.point_count(), nl = g.line_count();
  if (np + nl == 0) return true;
  std::vector<char> seen_p(np, 0), seen_l(nl, 0);
  // Vertices: points as x, lines as np + l.
  std::queue<int> work;
  if (np > 0) {
    seen_p[0] = 1;
    work.push(0);
  } else {
    seen_l[0] = 1;
    work.push(np);
  }
  int visited = 1;
  while (!work.empty()) {
    const int v = work.front();
    work.pop();
    if (v < np) {
      for (int l : g.lines_through(v)) {
        if (!seen_l[l]) {
          seen_l[l] = 1;
          ++visited;
          work.push(np + l);
        }
      }
    } else {
      for (int x : g.points_on(v - np)) {
        if (!seen_p[x]) {
          seen_p[x] = 1;
          ++visited;
          work.push(x);
        }
      }
    }
  }
  return visited == np + nl;
}

std::optional<Triangle> has_triangle(const IncidenceStructure& g) {
  const int np = g.point_count(), nl = g.line_count();
  std::vector<int> hit_by(nl, -1);
  std::vector<int> hit_point(nl, -1);
  std::vector<int> hit_line(nl, -1);
  for (int x = 0; x < np; ++x) {
    for (int m1 : g.lines_through(x)) {
      for (int y : g.points_on(m1)) {
        if (y == x) continue;
        for (int n : g.lines_through(y)) {
          if (n == m1) continue;
          if (hit_by[n] == x && hit_line[n] != m1 && hit_point[n] != y) {
            return Triangle{x, hit_point[n], y};
          }
          hit_by[n] = x;
          hit_point[n] = y;
          hit_line[n] = m1;
        }
      }
    }
  }
  return std::nullopt;
}

SubGeometryEmbedding induced_subgeometry(std::shared_ptr<const IncidenceStructure> ambient,
                                         PointSet points, std::vector<int> lines) {
  if (!ambient) throw GeometryError("null ambient geometry");
  const IncidenceStructure& g = *ambient;
  std::sort(points.begin(), points.end());
  std::sort(lines.begin(), lines.end());
  for (std::size_t i = 0; i < points.size(); ++i) {
    g.check_point(points[i]);
    if (i > 0 && points[i] == points[i - 1]) throw GeometryError("duplicate point in subset");
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    g.check_line(lines[i]);
    if (i > 0 && lines[i] == lines[i - 1]) throw GeometryError("duplicate line in subset");
  }

  SubGeometryEmbedding e;
  e.ambient_ = ambient;
  e.point_to_sub_.assign(g.point_count(), -1);
  e.line_to_sub_.assign(g.line_count(), -1);
  for (std::size_t i = 0; i < points.size(); ++i) e.point_to_sub_[points[i]] = static_cast<int>(i);

  std::vector<char> line_in(g.line_count(), 0);
  for (int l : lines) line_in[l] = 1;

  bool full = true;
  std::vector<std::vector<int>> sub_lines;
  for (int l : lines) {
    std::vector<int> pts;
    for (int x : g.points_on(l)) {
      if (e.point_to_sub_[x] >= 0) {
        pts.push_back(e.point_to_sub_[x]);
      } else {
        full = false;
      }
    }
    sub_lines.push_back(std::move(pts));
  }
  bool ideal = true;
  for (int x : points) {
    for (int l : g.lines_through(x)) {
      if (!line_in[l]) {
        ideal = false;
        break;
      }
    }
    if (!ideal) break;
  }
  bool hyperplane = true;
  for (int l : lines) {
    if (g.points_on(l).size() < 2) hyperplane = false;
  }
  for (int l = 0; l < g.line_count() && hyperplane; ++l) {
    int inside = 0;
    const auto pts = g.points_on(l);
    for (int x : pts)
      if (e.point_to_sub_[x] >= 0) ++inside;
    if (line_in[l]) {
      if (inside != static_cast<int>(pts.size())) hyperplane = false;
    } else {
      if (inside != 1) hyperplane = false;
    }
  }
  e.flags_ = EmbeddingFlags{full, ideal, hyperplane};

  std::optional<Coordinates> sub_coords;
  if (g.coordinates()) {
    Coordinates c{g.coordinates()->p, g.coordinates()->h, {}};
    for (int x : points) c.vectors.push_back(g.coordinates()->vectors[x]);
    sub_coords = std::move(c);
  }
  auto [sub, canon] = IncidenceStructure::create_indexed(g.name() + "/sub",
                                                         static_cast<int>(points.size()),
                                                         std::move(sub_lines), std::move(sub_coords));
  e.sub_line_to_ambient_.assign(lines.size(), -1);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    e.sub_line_to_ambient_[canon[i]] = lines[i];
    e.line_to_sub_[lines[i]] = canon[i];
  }
  e.sub_ = std::move(sub);
  if (!e.sub_.empty() && e.sub_.point_count() > 0 && e.sub_.line_count() > 0) {
    GQCheck check = verify_gq_axioms(e.sub_);
    if (check.ok()) e.sub_order_ = check.order;
  }
  e.points_ = std::move(points);
  e.lines_ = std::move(lines);
  return e;
}

SubGeometryEmbedding full_subgeometry_on(std::shared_ptr<const IncidenceStructure> ambient,
                                         PointSet points) {
  IndexMask in(ambient->point_count(), points);
  std::vector<int> lines;
  for (int l = 0; l < ambient->line_count(); ++l) {
    bool all = true;
    for (int x : ambient->points_on(l)) {
      if (!in[x]) {
        all = false;
        break;
      }
    }
    if (all) lines.push_back(l);
  }
  return induced_subgeometry(std::move(ambient), std::move(points), std::move(lines));
}

HyperplaneKind classify_hyperplane(const SubGeometryEmbedding& e) {
  if (!e.flags().is_geometric_hyperplane) throw HypothesisError("embedding is not a geometric hyperplane");
  const GQCheck amb = verify_gq_axioms(e.ambient());
  if (!amb.ok() || !amb.order->thick()) throw HypothesisError("ambient is not a thick GQ");
  const GQOrder ord = *amb.order;
  if (e.lines().empty()) {
    for (int l = 0; l < e.ambient().line_count(); ++l) {
      int inside = 0;
      for (int x : e.ambient().points_on(l))
        if (e.contains_point(x)) ++inside;
      if (inside != 1) throw ConsistencyViolation("line-free hyperplane is not an ovoid");
    }
    return HyperplaneKind{HyperplaneKind::Kind::Ovoid, {}};
  }
  if (!e.sub_order()) throw ConsistencyViolation("hyperplane with lines is not a subquadrangle");
  const GQOrder sub = *e.sub_order();
  if (sub.s != ord.s || ord.t % ord.s != 0 || sub.t != ord.t / ord.s) {
    throw ConsistencyViolation("hyperplane subquadrangle has order (" + std::to_string(sub.s) + "," +
                               std::to_string(sub.t) + "), expected (s, t/s)");
  }
  if (sub.t == 1 && ord.t != ord.s) throw ConsistencyViolation("grid hyperplane requires t = s");
  return HyperplaneKind{HyperplaneKind::Kind::FullSubGQ, sub};
}

}  // namespace gqcov
