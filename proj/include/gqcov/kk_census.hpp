#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gqcov/incidence.hpp"
#include "gqcov/subtension.hpp"

namespace gqcov {

struct ClosureResult {
  enum class Kind { ProperSubGQ, NotGQ, Whole, Capped };
  Kind kind = Kind::NotGQ;
  PointSet points;
  std::vector<int> lines;  // ambient lines with all their points in the closure
};

/// Smallest point set containing the seeds that holds every point of each line
/// meeting it in two or more points. Growing past `cap` points (when cap > 0)
/// stops the search with Kind::Capped.
ClosureResult span_closure(const IncidenceStructure& g, std::span<const int> seed_points,
                           std::span<const int> seed_lines, int cap = 0);

enum class OrbitLabel { Omega1, Omega2 };

struct SubGQRecord {
  PointSet points;
  std::vector<int> lines;
  ThetaCensus census;
  bool doubly_subtended = false;
  int one_subtended_ovoid_count = 0;
  OrbitLabel orbit_label = OrbitLabel::Omega2;
};

/// Fills the census-derived fields of a record from its point set.
void classify_record(std::shared_ptr<const IncidenceStructure> g, SubGQRecord& rec);

struct EnumerationOptions {
  /// Directory for resumable progress; empty disables checkpointing.
  std::string checkpoint_dir;
  /// Seconds between checkpoint writes.
  double checkpoint_interval = 60.0;
  /// Maximum number of closures; 0 means unlimited.
  long closure_budget = 0;
  /// Throw ConsistencyViolation when a complete run finds a different total.
  std::optional<int> expected_total;
  /// Skip the per-record theta census.
  bool skip_census = false;
  std::function<void(const std::string&)> progress;
};

struct SubGQEnumeration {
  std::vector<SubGQRecord> records;  // sorted by point set
  long grids = 0;
  long closures = 0;
  bool complete = false;       // every seed line was processed
  bool authoritative = false;  // complete and not cut short by the budget
  bool resumed = false;
};

/// Every full subquadrangle of order (s, s) through line_inf of a GQ of order
/// (s, s^2) in which line_inf is regular. Seeds are the grids spanned by
/// line_inf and a skew line; each is completed by single points collinear with
/// s+1 of its points.
SubGQEnumeration enumerate_subgqs_through_line(std::shared_ptr<const IncidenceStructure> g, int line_inf,
                                               const EnumerationOptions& options = {});

struct OrbitReport {
  int total = 0;
  int omega1 = 0;
  int omega2 = 0;
  std::vector<int> one_subtended_per_omega2;
  bool theta_in_1_2 = false;  // every subtended ovoid of every record
  bool accounting_ok = false;  // sum of theta * count = external points, per record
  bool counts_match = false;   // q^3+q^2, 2q^2, (q-1)q^2, (q+1)q^2(q-1)
};

/// Throws ConsistencyViolation when `enforce` and a count mismatches.
OrbitReport census_report(const std::vector<SubGQRecord>& records, int q, int ambient_points,
                          bool enforce = false);

}  // namespace gqcov
