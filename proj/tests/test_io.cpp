#include <doctest.h>

#include <filesystem>

#include "gqcov/automorphisms.hpp"
#include "gqcov/constructions.hpp"
#include "gqcov/errors.hpp"
#include "gqcov/io.hpp"
#include "gqcov/subtension.hpp"

using namespace gqcov;
namespace fs = std::filesystem;

TEST_SUITE("io") {
  TEST_CASE("geometry round trip keeps coordinates") {
    auto p = build_Q5_with_Q4(2);
    auto j = geometry_to_json(*p.ambient);
    auto back = geometry_from_json(j);
    CHECK(back == *p.ambient);
    CHECK(back.coordinates() == p.ambient->coordinates());
    CHECK(geometry_to_json(back).dump() == j.dump());
  }

  TEST_CASE("malformed geometry") {
    CHECK_THROWS_AS(geometry_from_json(Json{{"lines", Json::array()}}), GeometryError);
    CHECK_THROWS_AS(geometry_from_json(Json{{"points", "x"}, {"lines", Json::array()}}), GeometryError);
  }

  TEST_CASE("pair directory, morphism and permutation files") {
    auto p = build_Q5_with_Q4(2);
    const fs::path dir = fs::temp_directory_path() / "gqcov_io_test";
    fs::remove_all(dir);
    write_pair(dir.string(), p);
    auto back = read_pair(dir.string());
    CHECK(back.embedding.points() == p.embedding.points());
    CHECK(back.embedding.lines() == p.embedding.lines());

    auto d = build_derived_pair(back.embedding);
    auto m = morphism_from_json(d.A, d.E, morphism_to_json(d.pi_morphism()));
    CHECK(m == d.pi_morphism());
    CHECK_THROWS_AS(morphism_from_json(d.E, d.E, morphism_to_json(d.pi_morphism())), GeometryError);

    const auto& g = *p.ambient;
    auto aut = automorphism_group(g);
    const auto& gen = aut.generators().front();
    CHECK(perm_from_json(perm_to_json(gen, g.point_count()), g.point_count(), g.line_count()) == gen);
    fs::remove_all(dir);
  }

  TEST_CASE("fnv-1a") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  }
}
