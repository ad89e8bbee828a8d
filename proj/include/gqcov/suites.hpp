#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gqcov/automorphisms.hpp"
#include "gqcov/constructions.hpp"
#include "gqcov/io.hpp"

namespace gqcov {

struct SuiteOptions {
  std::string out_dir;    // manifest and checkpoints; empty writes nothing
  std::string cache_dir;  // constructions; defaults to $GQCOV_CACHE
  std::uint64_t seed = 0;
  long budget = kDefaultSearchBudget;
  bool no_build = false;  // fail instead of building a missing cached construction
  int samples = 100;      // condition (C) instances per kind
  std::function<void(const std::string&)> progress;
};

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CriterionOutcome {
  int id = 0;
  std::string title;
  std::vector<Verdict> checks;
  Json diagnostics = Json::object();
  double seconds = 0.0;

  bool pass() const;
};

/// Builds constructions on demand, optionally through an on-disk cache, and
/// records a digest for each one it hands out.
class ConstructionCache {
 public:
  explicit ConstructionCache(const SuiteOptions& options);

  /// Keys: q5q4-<q>, q4q3-<q>, q5q3-<q>, h4h3-2, kk-9. Throws GeometryError on an
  /// unknown key, or with no_build when the cached copy is missing.
  EmbeddedPair pair(const std::string& key);
  /// kk-9 only: the geometry and its line [inf].
  KantorKnuthGQ kantor_knuth(int q);

  const std::map<std::string, std::string>& digests() const { return digests_; }

 private:
  std::string path_for(const std::string& key) const;
  SuiteOptions options_;
  std::map<std::string, EmbeddedPair> pairs_;
  std::map<std::string, std::string> digests_;
};

/// Criteria 1..11 of the verification plan.
CriterionOutcome evaluate_criterion(int id, ConstructionCache& cache, const SuiteOptions& options);

/// A small q = 3 lower-decomposition check (no exhaustive enumeration).
CriterionOutcome lower_decomposition_q3(ConstructionCache& cache, const SuiteOptions& options);

struct RunManifest {
  std::string command;
  Json parameters = Json::object();
  std::map<std::string, std::string> input_digests;
  std::vector<Verdict> verdicts;
  Json diagnostics = Json::object();
  std::map<std::string, double> timings;

  bool pass() const;
  /// First failing verdict, or empty.
  std::string first_failure() const;
};

/// Deterministic apart from the "timings" block.
Json manifest_to_json(const RunManifest& m);

const std::vector<std::string>& suite_names();

/// Throws GeometryError for an unknown name. Writes <out_dir>/<name>.json.
RunManifest run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace gqcov
