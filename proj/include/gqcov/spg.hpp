#pragma once

#include <optional>
#include <string>

#include "gqcov/incidence.hpp"
#include "gqcov/subtension.hpp"

namespace gqcov {

struct SPGParameters {
  int s_star = 0;
  int t_star = 0;
  int alpha_star = 0;
  int mu_star = 0;

  bool operator==(const SPGParameters&) const = default;
};

struct SPGResult {
  std::optional<SPGParameters> params;
  /// No non-incident pair sees a neighbour on the line (alpha undetermined).
  bool alpha_vacuous = false;
  /// No non-collinear point pair exists (mu undetermined). When an expected
  /// value is supplied it is adopted.
  bool mu_vacuous = false;
  bool matches_expected = true;
  std::string failure;  // first failing axiom, empty on success
  std::string witness;

  bool ok() const { return params.has_value() && matches_expected; }
};

/// Measures the semipartial-geometry parameters of an arbitrary incidence
/// structure directly from its incidences.
SPGResult verify_spg(const IncidenceStructure& g, const std::optional<SPGParameters>& expected = std::nullopt);

/// (s-1, t, theta, theta(t - t')) for a uniformly theta-subtended pair.
SPGParameters predicted_spg(const GQOrder& order, const GQOrder& sub_order, int theta);

struct HypothesisGate {
  bool t_prime_not_one = false;
  bool t_equals_s_t_prime = false;
  bool theta_relation = false;  // (theta - 1) t = s^2
  bool uniform_theta_above_one = false;
  bool passes = false;
  std::string detail;
};

HypothesisGate hypothesis_gate(const SubGeometryEmbedding& emb, const ThetaCensus& census);

struct WitnessLineReport {
  int rosettes = 0;
  int witness_lines = 0;
  bool independent = false;
  std::string witness;
};

/// Recomputes each rosette's ovoids and its neighbour profile in E from every
/// witness line separately and compares.
WitnessLineReport witness_line_independence(const DerivedPair& pair);

}  // namespace gqcov
