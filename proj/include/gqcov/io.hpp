#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "gqcov/constructions.hpp"
#include "gqcov/group.hpp"
#include "gqcov/incidence.hpp"
#include "gqcov/morphism.hpp"

namespace gqcov {

using Json = nlohmann::json;

Json geometry_to_json(const IncidenceStructure& g);
/// Throws GeometryError on malformed input.
IncidenceStructure geometry_from_json(const Json& j);

Json embedding_to_json(const SubGeometryEmbedding& emb);
SubGeometryEmbedding embedding_from_json(std::shared_ptr<const IncidenceStructure> ambient, const Json& j);

/// {"points": [...], "lines": [...]} with image indices.
Json morphism_to_json(const GeometryMorphism& m);
GeometryMorphism morphism_from_json(std::shared_ptr<const IncidenceStructure> source,
                                    std::shared_ptr<const IncidenceStructure> target, const Json& j);

/// Same layout as a morphism file, on the combined point/line domain.
Json perm_to_json(const Perm& p, int point_count);
Perm perm_from_json(const Json& j, int point_count, int line_count);

Json read_json(const std::string& path);
/// Writes through a temporary file and a rename.
void write_json(const std::string& path, const Json& j);

std::shared_ptr<const IncidenceStructure> read_geometry(const std::string& path);
void write_geometry(const std::string& path, const IncidenceStructure& g);

/// A pair directory holds ambient.json and embedding.json.
EmbeddedPair read_pair(const std::string& dir);
void write_pair(const std::string& dir, const EmbeddedPair& pair);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace gqcov
