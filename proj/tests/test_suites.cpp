#include <doctest.h>

#include <filesystem>

#include "gqcov/errors.hpp"
#include "gqcov/suites.hpp"

using namespace gqcov;
namespace fs = std::filesystem;

namespace {
Json without_timings(Json j) {
  j.erase("timings");
  return j;
}
}  // namespace

TEST_SUITE("suites") {
  TEST_CASE("manifests are reproducible apart from timings") {
    SuiteOptions o;
    auto a = run_suite("spg-all", o);
    auto b = run_suite("spg-all", o);
    CHECK(a.pass());
    CHECK(without_timings(manifest_to_json(a)).dump() == without_timings(manifest_to_json(b)).dump());
    auto j = manifest_to_json(a);
    CHECK(j["schema_version"] == 1);
    CHECK(j["verdict"] == "pass");
  }

  TEST_CASE("cache round trip and --no-build") {
    const fs::path dir = fs::temp_directory_path() / "gqcov_cache_test";
    fs::remove_all(dir);
    SuiteOptions o;
    o.cache_dir = dir.string();
    o.no_build = true;
    CHECK_THROWS_AS(run_suite("spg-all", o), GeometryError);
    o.no_build = false;
    auto built = run_suite("spg-all", o);
    o.no_build = true;
    auto cached = run_suite("spg-all", o);
    CHECK(cached.pass());
    CHECK(cached.input_digests == built.input_digests);
    CHECK_FALSE(built.input_digests.empty());
    fs::remove_all(dir);
  }

  TEST_CASE("unknown suite") { CHECK_THROWS_AS(run_suite("nope", SuiteOptions{}), GeometryError); }

  TEST_CASE("lower decomposition at q=3") {
    SuiteOptions o;
    ConstructionCache cache(o);
    CHECK(lower_decomposition_q3(cache, o).pass());
  }
}
