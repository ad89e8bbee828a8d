#include <doctest.h>

#include <filesystem>

#include "gqcov/constructions.hpp"
#include "gqcov/errors.hpp"
#include "gqcov/kk_census.hpp"

using namespace gqcov;
namespace fs = std::filesystem;

TEST_SUITE("kk_census") {
  TEST_CASE("closure of a single line is the line") {
    auto g = build_Q4(2);
    const int seed[1] = {0};
    auto c = span_closure(g, {}, seed);
    CHECK(c.kind == ClosureResult::Kind::NotGQ);
    CHECK(c.points.size() == 3);
    CHECK(c.lines == std::vector<int>{0});
  }

  TEST_CASE("a subquadrangle is already closed") {
    auto p = build_Q5_with_Q4(2);
    auto c = span_closure(*p.ambient, p.embedding.points(), {});
    CHECK(c.kind == ClosureResult::Kind::ProperSubGQ);
    CHECK(c.points == p.embedding.points());
    CHECK(c.lines == p.embedding.lines());
  }

  TEST_CASE("cap and whole geometry") {
    auto g = build_Q4(3);
    auto lines = std::vector<int>{0};
    int other = -1;
    for (int l = 1; l < g.line_count() && other < 0; ++l) {
      bool meet = false;
      for (int x : g.points_on(l)) meet |= g.incident(x, 0);
      if (!meet) other = l;
    }
    lines.push_back(other);
    auto grid = span_closure(g, {}, lines);
    CHECK(grid.kind == ClosureResult::Kind::ProperSubGQ);
    CHECK(grid.points.size() == 16);
    CHECK(span_closure(g, {}, lines, 10).kind == ClosureResult::Kind::Capped);
  }

  TEST_CASE("classical Q(5,3) has 36 subquadrangles through a line") {
    auto p = build_Q5_with_Q3(3);
    auto en = enumerate_subgqs_through_line(p.ambient, 0);
    CHECK(en.authoritative);
    CHECK(en.records.size() == 36);
    auto rep = census_report(en.records, 3, p.ambient->point_count());
    CHECK(rep.omega1 == 36);
    CHECK(rep.accounting_ok);
    CHECK_FALSE(rep.counts_match);
    CHECK_THROWS_AS(census_report(en.records, 3, p.ambient->point_count(), true), ConsistencyViolation);
    EnumerationOptions o;
    o.expected_total = 810;
    CHECK_THROWS_AS(enumerate_subgqs_through_line(p.ambient, 0, o), ConsistencyViolation);
  }

  TEST_CASE("checkpoints resume") {
    auto p = build_Q5_with_Q3(3);
    const fs::path dir = fs::temp_directory_path() / "gqcov_kk_checkpoint_test";
    fs::remove_all(dir);
    EnumerationOptions o;
    o.checkpoint_dir = dir.string();
    o.closure_budget = 10;
    auto partial = enumerate_subgqs_through_line(p.ambient, 0, o);
    CHECK_FALSE(partial.authoritative);
    o.closure_budget = 0;
    auto first = enumerate_subgqs_through_line(p.ambient, 0, o);
    CHECK(first.authoritative);
    CHECK(fs::exists(dir / "kk_progress.json"));
    auto again = enumerate_subgqs_through_line(p.ambient, 0, o);
    CHECK(again.resumed);
    REQUIRE(again.records.size() == first.records.size());
    for (std::size_t i = 0; i < first.records.size(); ++i) {
      CHECK(again.records[i].points == first.records[i].points);
      CHECK(again.records[i].census.counts == first.records[i].census.counts);
    }
    fs::remove_all(dir);
  }
}
