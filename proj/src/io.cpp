#include "gqcov/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gqcov/errors.hpp"

namespace gqcov {

namespace fs = std::filesystem;

namespace {

template <class T>
T field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw GeometryError(what + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw GeometryError(what + ": bad \"" + key + "\": " + e.what());
  }
}

}  // namespace

Json geometry_to_json(const IncidenceStructure& g) {
  Json j;
  j["name"] = g.name();
  j["points"] = g.point_count();
  j["lines"] = g.lines();
  if (const auto& c = g.coordinates()) {
    j["coords"] = c->vectors;
    j["field"] = {{"p", c->p}, {"h", c->h}};
  }
  return j;
}

IncidenceStructure geometry_from_json(const Json& j) {
  const std::string what = "geometry";
  auto name = j.is_object() && j.contains("name") ? field<std::string>(j, "name", what) : std::string("geometry");
  auto points = field<int>(j, "points", what);
  auto lines = field<std::vector<std::vector<int>>>(j, "lines", what);
  std::optional<Coordinates> coords;
  if (j.contains("coords")) {
    Coordinates c;
    c.vectors = field<std::vector<std::vector<int>>>(j, "coords", what);
    if (j.contains("field")) {
      c.p = field<int>(j.at("field"), "p", what);
      c.h = field<int>(j.at("field"), "h", what);
    }
    coords = std::move(c);
  }
  return IncidenceStructure::create(std::move(name), points, std::move(lines), std::move(coords));
}

Json embedding_to_json(const SubGeometryEmbedding& emb) {
  Json j;
  j["points"] = emb.points();
  j["lines"] = emb.lines();
  const auto& f = emb.flags();
  j["flags"] = {{"is_full", f.is_full}, {"is_ideal", f.is_ideal}, {"is_geometric_hyperplane", f.is_geometric_hyperplane}};
  if (const auto& o = emb.sub_order()) j["order"] = {o->s, o->t};
  return j;
}

SubGeometryEmbedding embedding_from_json(std::shared_ptr<const IncidenceStructure> ambient, const Json& j) {
  const std::string what = "embedding";
  auto points = field<PointSet>(j, "points", what);
  auto lines = field<std::vector<int>>(j, "lines", what);
  return induced_subgeometry(std::move(ambient), std::move(points), std::move(lines));
}

Json morphism_to_json(const GeometryMorphism& m) {
  return Json{{"points", m.point_map}, {"lines", m.line_map}};
}

GeometryMorphism morphism_from_json(std::shared_ptr<const IncidenceStructure> source,
                                    std::shared_ptr<const IncidenceStructure> target, const Json& j) {
  const std::string what = "morphism";
  GeometryMorphism m;
  m.point_map = field<std::vector<int>>(j, "points", what);
  m.line_map = field<std::vector<int>>(j, "lines", what);
  if (static_cast<int>(m.point_map.size()) != source->point_count() ||
      static_cast<int>(m.line_map.size()) != source->line_count()) {
    throw GeometryError("morphism: map sizes do not match the source geometry");
  }
  m.source = std::move(source);
  m.target = std::move(target);
  return m;
}

Json perm_to_json(const Perm& p, int point_count) {
  std::vector<int> pts(p.begin(), p.begin() + point_count);
  std::vector<int> lines;
  for (std::size_t i = point_count; i < p.size(); ++i) lines.push_back(p[i] - point_count);
  return Json{{"points", pts}, {"lines", lines}};
}

Perm perm_from_json(const Json& j, int point_count, int line_count) {
  const std::string what = "permutation";
  auto pts = field<std::vector<int>>(j, "points", what);
  if (static_cast<int>(pts.size()) != point_count) throw GeometryError("permutation: wrong number of points");
  Perm p = pts;
  if (j.contains("lines")) {
    auto lines = field<std::vector<int>>(j, "lines", what);
    if (static_cast<int>(lines.size()) != line_count) throw GeometryError("permutation: wrong number of lines");
    for (int l : lines) p.push_back(l + point_count);
  }
  return p;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw GeometryError(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw GeometryError("cannot write " + tmp.string());
    out << j.dump(1) << '\n';
    if (!out) throw GeometryError("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::shared_ptr<const IncidenceStructure> read_geometry(const std::string& path) {
  return std::make_shared<const IncidenceStructure>(geometry_from_json(read_json(path)));
}

void write_geometry(const std::string& path, const IncidenceStructure& g) { write_json(path, geometry_to_json(g)); }

EmbeddedPair read_pair(const std::string& dir) {
  fs::path d(dir);
  auto ambient = read_geometry((d / "ambient.json").string());
  auto emb = embedding_from_json(ambient, read_json((d / "embedding.json").string()));
  return {ambient, std::move(emb)};
}

void write_pair(const std::string& dir, const EmbeddedPair& pair) {
  fs::path d(dir);
  write_geometry((d / "ambient.json").string(), *pair.ambient);
  write_json((d / "embedding.json").string(), embedding_to_json(pair.embedding));
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gqcov
