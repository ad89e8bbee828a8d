#include "gqcov/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <random>

#include "gqcov/covers.hpp"
#include "gqcov/errors.hpp"
#include "gqcov/graph_search.hpp"
#include "gqcov/kk_census.hpp"
#include "gqcov/spg.hpp"
#include "gqcov/subtension.hpp"

namespace gqcov {

namespace fs = std::filesystem;

namespace {

constexpr int kSchemaVersion = 1;

std::string str(long v) { return std::to_string(v); }

std::string order_text(const std::optional<GQOrder>& o) {
  return o ? "(" + str(o->s) + "," + str(o->t) + ")" : "none";
}

EmbeddedPair build_pair(const std::string& key) {
  auto dash = key.rfind('-');
  if (dash == std::string::npos) throw GeometryError("unknown construction key: " + key);
  const std::string family = key.substr(0, dash);
  const int q = std::stoi(key.substr(dash + 1));
  if (family == "q5q4") return build_Q5_with_Q4(q);
  if (family == "q4q3") return build_Q4_with_Q3(q);
  if (family == "q5q3") return build_Q5_with_Q3(q);
  if (family == "h4h3") return build_H4_with_H3(q);
  throw GeometryError("unknown construction key: " + key);
}

Json pair_json(const EmbeddedPair& p) {
  return Json{{"ambient", geometry_to_json(*p.ambient)}, {"embedding", embedding_to_json(p.embedding)}};
}

std::uint64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

Verdict check(std::string name, bool pass, std::string detail = {}) {
  return Verdict{std::move(name), pass, std::move(detail)};
}

bool isomorphic(const IncidenceStructure& a, const IncidenceStructure& b, long budget) {
  if (a.point_count() != b.point_count() || a.line_count() != b.line_count()) return false;
  const ColoredGraph ga = incidence_graph(a);
  const ColoredGraph gb = incidence_graph(b);
  IsomorphismSearch search(ga, gb, budget);
  return search.find_one().has_value();
}

// Criterion bodies. Each appends checks and diagnostics to the outcome.

void constructions(CriterionOutcome& out, ConstructionCache& cache) {
  auto gq = [](const IncidenceStructure& g) { return verify_gq_axioms(g).order; };
  auto expect = [&](const std::string& name, const IncidenceStructure& g, GQOrder want) {
    auto got = gq(g);
    out.checks.push_back(check(name + " order " + order_text(want), got && *got == want, "measured " + order_text(got)));
  };
  for (int s : {2, 3, 4}) expect("grid(" + str(s) + ")", build_grid(s), {s, 1});
  for (int q : {2, 3}) expect("W(" + str(q) + ")", build_W(q), {q, q});
  for (int q : {2, 3, 4}) expect("Q(4," + str(q) + ")", build_Q4(q), {q, q});

  for (int q : {2, 3}) {
    auto p = cache.pair("q5q4-" + str(q));
    const int pts = q == 2 ? 27 : 112, lines = q == 2 ? 45 : 280, sub = q == 2 ? 15 : 40;
    out.checks.push_back(check("Q(5," + str(q) + ") size " + str(pts) + "/" + str(lines),
                               p.ambient->point_count() == pts && p.ambient->line_count() == lines,
                               str(p.ambient->point_count()) + "/" + str(p.ambient->line_count())));
    out.checks.push_back(check("Q(4," + str(q) + ") section size " + str(sub) + "/" + str(sub),
                               static_cast<int>(p.embedding.points().size()) == sub &&
                                   static_cast<int>(p.embedding.lines().size()) == sub,
                               str(p.embedding.points().size()) + "/" + str(p.embedding.lines().size())));
    expect("Q(5," + str(q) + ")", *p.ambient, {q, q * q});
    expect("Q(4," + str(q) + ") section", p.embedding.sub(), {q, q});
  }
  for (int q : {2, 3, 4}) {
    auto p = cache.pair("q4q3-" + str(q));
    expect("Q(4," + str(q) + ") with grid", *p.ambient, {q, q});
    expect("grid section of Q(4," + str(q) + ")", p.embedding.sub(), {q, 1});
  }
  for (int q : {2, 3}) {
    auto p = cache.pair("q5q3-" + str(q));
    expect("grid section of Q(5," + str(q) + ")", p.embedding.sub(), {q, 1});
  }
  auto h = cache.pair("h4h3-2");
  out.checks.push_back(check("H(4,4) has 165 points", h.ambient->point_count() == 165, str(h.ambient->point_count())));
  expect("H(4,4)", *h.ambient, {4, 8});
  expect("H(3,4) section", h.embedding.sub(), {4, 2});
  auto kk = cache.kantor_knuth(9);
  expect("Kantor-Knuth q=9", *kk.geometry, {9, 81});
}

void theta_censuses(CriterionOutcome& out, ConstructionCache& cache) {
  struct Case {
    std::string key;
    int theta;
  };
  const std::vector<Case> cases = {{"q5q4-2", 2}, {"q5q4-3", 2}, {"q5q3-2", 3}, {"q5q3-3", 4},
                                   {"q4q3-3", 2}, {"q4q3-2", 1}, {"q4q3-4", 1}, {"h4h3-2", 3}};
  for (const auto& c : cases) {
    auto p = cache.pair(c.key);
    auto census = theta_census(p.embedding);
    std::string detail;
    for (const auto& [t, n] : census.counts) detail += (detail.empty() ? "" : ", ") + str(t) + ":" + str(n);
    out.checks.push_back(check(c.key + " uniformly " + str(c.theta) + "-subtended",
                               census.uniform && census.theta == c.theta, "theta:count " + detail));
  }
}

void lower_q2(CriterionOutcome& out, ConstructionCache& cache, const SuiteOptions& opt,
              CoverEnumeration* keep = nullptr, std::vector<FactorizationResult>* keep_f = nullptr) {
  auto ep = cache.pair("q5q4-2");
  DerivedPair pair = build_derived_pair(ep.embedding);
  auto en = enumerate_covers(pair.A, pair.E, std::max(opt.budget, 10'000'000L));
  const auto aut = automorphism_group(*pair.E, opt.budget).order();
  out.checks.push_back(check("cover count equals |Aut(E)|", en.covers.size() == aut,
                             str(en.covers.size()) + " covers, |Aut(E)| = " + str(static_cast<long>(aut)) + ", " +
                                 str(en.nodes) + " nodes"));
  long good = 0;
  std::vector<FactorizationResult> fs;
  fs.reserve(en.covers.size());
  for (const auto& c : en.covers) {
    auto f = factorize_lower(pair, c.morphism);
    if (is_automorphism(f.alpha) && compose(f.alpha, pair.pi_morphism()) == c.morphism) ++good;
    fs.push_back(std::move(f));
  }
  out.checks.push_back(check("every cover is alpha o pi", good == static_cast<long>(en.covers.size()),
                             str(good) + "/" + str(en.covers.size())));
  auto fpi = factorize_lower(pair, pair.pi_morphism());
  out.checks.push_back(check("factorize(pi) is the identity", fpi.alpha == identity_morphism(pair.E)));
  out.diagnostics["covers"] = en.covers.size();
  out.diagnostics["nodes"] = en.nodes;
  if (keep) *keep = std::move(en);
  if (keep_f) *keep_f = std::move(fs);
}

void initial_object(CriterionOutcome& out, ConstructionCache& cache, const SuiteOptions& opt) {
  CoverEnumeration en;
  std::vector<FactorizationResult> fs;
  CriterionOutcome scratch;
  lower_q2(scratch, cache, opt, &en, &fs);
  const std::size_t n = en.covers.size();
  long pairs = 0, unique = 0, inverse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const auto& gi = en.covers[i].morphism;
      const auto& gj = en.covers[j].morphism;
      auto ij = connecting_automorphism(gi, fs[i], gj, fs[j]);
      auto ji = connecting_automorphism(gj, fs[j], gi, fs[i]);
      const long k = i == j ? 1 : 2;
      pairs += k;
      if (ij.commutes && ij.unique) ++unique;
      if (i != j && ji.commutes && ji.unique) ++unique;
      if (ij.delta == inverse_automorphism(ji.delta)) inverse += k;
    }
  }
  out.checks.push_back(check("exactly one connecting delta per ordered pair", n > 0 && unique == pairs,
                             str(unique) + "/" + str(pairs)));
  out.checks.push_back(check("delta(g,g') = delta(g',g)^-1", n > 0 && inverse == pairs,
                             str(inverse) + "/" + str(pairs)));
  out.diagnostics["ordered_pairs"] = pairs;
}

void spg_checks(CriterionOutcome& out, ConstructionCache& cache) {
  struct Case {
    std::string key;
    SPGParameters want;
  };
  const std::vector<Case> passing = {{"q5q4-2", {1, 4, 2, 4}}, {"q5q4-3", {2, 9, 2, 12}}, {"h4h3-2", {3, 8, 3, 18}}};
  for (const auto& c : passing) {
    auto ep = cache.pair(c.key);
    DerivedPair pair = build_derived_pair(ep.embedding);
    auto gate = hypothesis_gate(ep.embedding, pair.census);
    auto predicted = predicted_spg(pair.order, pair.sub_order, pair.census.theta);
    auto measured = verify_spg(*pair.E, c.want);
    std::string got = measured.params ? str(measured.params->s_star) + "," + str(measured.params->t_star) + "," +
                                            str(measured.params->alpha_star) + "," + str(measured.params->mu_star)
                                      : measured.failure;
    if (measured.mu_vacuous) got += " (mu vacuous)";
    out.checks.push_back(check(c.key + " gate passes", gate.passes, gate.detail));
    out.checks.push_back(check(c.key + " spg parameters", measured.ok() && predicted == c.want, got));
    auto wl = witness_line_independence(pair);
    out.checks.push_back(check(c.key + " alpha count independent of witness line", wl.independent,
                               str(wl.witness_lines) + " witness lines " + wl.witness));
  }
  for (std::string key : {"q5q3-2", "q5q3-3", "q4q3-3"}) {
    auto ep = cache.pair(key);
    auto gate = hypothesis_gate(ep.embedding, theta_census(ep.embedding));
    out.checks.push_back(check(key + " gate fails", !gate.passes, gate.detail));
  }
}

void reconstruction(CriterionOutcome& out, ConstructionCache& cache, const SuiteOptions& opt) {
  for (int q : {2, 3}) {
    auto ep = cache.pair("q5q4-" + str(q));
    DerivedPair pair = build_derived_pair(ep.embedding);
    auto rec = reconstruct_chi(pair, pair.pi_morphism());
    const bool iso = rec.ok() && isomorphic(*rec.value->chi, *pair.ambient, opt.budget);
    out.checks.push_back(check("chi(pi) isomorphic to Q(5," + str(q) + ")", iso, rec.ok() ? "" : rec.witness));
    // The automorphisms restricting to a given one of the subquadrangle number theta.
    const int n = static_cast<int>(ep.embedding.points().size());
    auto ext = extend_automorphism(ep.embedding, identity_perm(n), ExtensionMode::FindAll, opt.budget);
    out.checks.push_back(check("theta extensions of the identity at q=" + str(q),
                               static_cast<int>(ext.extensions.size()) == pair.census.theta,
                               str(ext.extensions.size()) + " vs theta " + str(pair.census.theta)));
  }
  auto ep = cache.pair("q5q4-2");
  DerivedPair pair = build_derived_pair(ep.embedding);
  auto en = enumerate_covers(pair.A, pair.E, std::max(opt.budget, 10'000'000L));
  long ok = 0;
  std::string first;
  for (const auto& c : en.covers) {
    auto rec = reconstruct_chi(pair, c.morphism);
    if (!rec.ok()) {
      if (first.empty()) first = rec.witness;
      continue;
    }
    auto id = identify_chi_prime(*rec.value, pair);
    if (id.ok) ++ok;
    else if (first.empty()) first = id.witness;
  }
  out.checks.push_back(check("identify_chi_prime on every q=2 cover",
                             !en.covers.empty() && ok == static_cast<long>(en.covers.size()),
                             str(ok) + "/" + str(en.covers.size()) + (first.empty() ? "" : " first failure: " + first)));
}

void condition_c(CriterionOutcome& out, ConstructionCache& cache, const SuiteOptions& opt) {
  for (std::string key : {"q5q4-2", "h4h3-2"}) {
    auto ep = cache.pair(key);
    DerivedPair pair = build_derived_pair(ep.embedding);
    for (auto reading : {ConditionCReading::Literal, ConditionCReading::ProofImplied}) {
      const bool literal = reading == ConditionCReading::Literal;
      auto sample = condition_c_instances(pair, opt.samples, opt.seed, reading);
      long single_coplanar = 0, multi_coplanar = 0, multi_overline = 0;
      for (const auto& i : sample.single) single_coplanar += condition_c_planarity(pair, i);
      for (const auto& i : sample.multi) {
        multi_coplanar += condition_c_planarity(pair, i);
        multi_overline += i.overline;
      }
      Json d{{"single", sample.single.size()},         {"single_coplanar", single_coplanar},
             {"multi", sample.multi.size()},           {"multi_coplanar", multi_coplanar},
             {"multi_overline", multi_overline},       {"attempts", sample.attempts},
             {"degenerate", sample.degenerate}};
      out.diagnostics[key][literal ? "literal" : "proof_implied"] = d;
      if (!literal) continue;
      const auto n = static_cast<std::size_t>(opt.samples);
      out.checks.push_back(check(key + " |M|=1 instances coplanar",
                                 sample.single.size() == n && single_coplanar == opt.samples,
                                 str(single_coplanar) + "/" + str(sample.single.size())));
      out.checks.push_back(check(key + " |M|>1 instances non-coplanar",
                                 sample.multi.size() == n && multi_coplanar == 0,
                                 str(static_cast<long>(sample.multi.size()) - multi_coplanar) + "/" +
                                     str(sample.multi.size()) + " non-coplanar"));
    }
  }
}

void extension(CriterionOutcome& out, ConstructionCache& cache, const SuiteOptions& opt) {
  {
    auto ep = cache.pair("q5q4-2");
    const int n = static_cast<int>(ep.embedding.points().size());
    auto rep = extend_automorphism(ep.embedding, identity_perm(n), ExtensionMode::FindAll, opt.budget);
    auto kernel = elementwise_kernel(ep.embedding, opt.budget).order();
    out.checks.push_back(check("identity of Q(4,2) has 2 extensions", rep.extensions.size() == 2,
                               str(rep.extensions.size())));
    out.checks.push_back(check("elementwise kernel has order 2", kernel == 2 && rep.bijection_with_kernel,
                               str(static_cast<long>(kernel))));
  }
  for (int s : {2, 3, 4}) {
    auto ep = cache.pair("q4q3-" + str(s));
    const IncidenceStructure& grid = ep.embedding.sub();
    auto aut = automorphism_group(grid, opt.budget);
    const std::uint64_t want = 2 * factorial(s + 1) * factorial(s + 1);
    out.checks.push_back(check("|Aut(grid(" + str(s) + "))| = 2((s+1)!)^2", aut.order() == want,
                               str(static_cast<long>(aut.order()))));
    const auto gens = aut.generators();
    int extend = 0;
    for (const auto& g : gens) {
      auto rep = extend_automorphism(ep.embedding, point_part(g, grid.point_count()), ExtensionMode::FindOne,
                                     opt.budget);
      extend += !rep.extensions.empty();
    }
    const int total = static_cast<int>(gens.size());
    const std::string detail = str(extend) + "/" + str(total) + " generators extend";
    if (s < 4)
      out.checks.push_back(check("every generator of Aut(grid(" + str(s) + ")) extends", extend == total, detail));
    else
      out.checks.push_back(check("some generator of Aut(grid(4)) does not extend", extend < total, detail));

    auto stab = subgeometry_stabilizer(ep.embedding, opt.budget);
    auto kernel = elementwise_kernel(ep.embedding, opt.budget);
    auto induced = induced_on_sub(stab, ep.embedding, kernel);
    out.diagnostics["grid_" + str(s)] = {{"aut_grid", aut.order()},
                                         {"stabilizer", stab.order()},
                                         {"kernel", kernel.order()},
                                         {"induced", induced.image.order()},
                                         {"generators_extending", extend},
                                         {"generators", total}};
  }
}

GeometryMorphism sampled_automorphism(const DerivedPair& pair, std::uint64_t seed, long budget) {
  auto aut = automorphism_group(*pair.E, budget);
  const auto gens = aut.generators();
  Perm p = identity_perm(pair.E->point_count() + pair.E->line_count());
  std::mt19937_64 rng(seed);
  if (!gens.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int k = 0; k < 16; ++k) p = perm_mul(p, gens[pick(rng)]);
    if (is_identity(p)) p = gens.front();
  }
  return as_morphism(pair.E, p);
}

void higher(CriterionOutcome& out, ConstructionCache& cache, const SuiteOptions& opt) {
  for (int q : {2, 3}) {
    auto ep = cache.pair("q5q4-" + str(q));
    DerivedPair pair = build_derived_pair(ep.embedding);
    auto alpha0 = sampled_automorphism(pair, opt.seed, opt.budget);
    auto gamma = compose(alpha0, pair.pi_morphism());
    auto rep = higher_decomposition_check(pair, gamma, opt.budget);
    out.checks.push_back(check("higher decomposition Q(5," + str(q) + ")", rep.verdict,
                               str(rep.induced) + "/" + str(rep.generators) + " generators " + rep.failure));
    out.checks.push_back(check("alpha~ verified for a sampled cover at q=" + str(q),
                               rep.alpha_tilde.has_value() && rep.alpha_tilde_verified));
  }
}

void brown(CriterionOutcome& out, ConstructionCache& cache, const SuiteOptions& opt) {
  for (int q : {2, 3}) {
    auto ep = cache.pair("q5q4-" + str(q));
    DerivedPair pair = build_derived_pair(ep.embedding);
    auto r = aut_E_two_ways(pair, true, opt.budget);
    out.checks.push_back(check("Aut(E) equals the ovoid-set stabilizer at q=" + str(q), r.equal,
                               str(static_cast<long>(r.order_direct)) + " vs " +
                                   str(static_cast<long>(r.order_via_stabilizer))));
  }
}

void kk_census(CriterionOutcome& out, ConstructionCache& cache, const SuiteOptions& opt) {
  auto kk = cache.kantor_knuth(9);
  EnumerationOptions eo;
  if (!opt.out_dir.empty()) eo.checkpoint_dir = (fs::path(opt.out_dir) / "kk-checkpoint").string();
  eo.progress = opt.progress;
  auto en = enumerate_subgqs_through_line(kk.geometry, kk.line_infinity, eo);
  auto rep = census_report(en.records, 9, kk.geometry->point_count());
  out.checks.push_back(check("enumeration authoritative", en.authoritative));
  out.checks.push_back(check("810 subquadrangles through [inf]", rep.total == 810, str(rep.total)));
  out.checks.push_back(check("162 doubly subtended", rep.omega1 == 162, str(rep.omega1)));
  out.checks.push_back(check("648 not doubly subtended", rep.omega2 == 648, str(rep.omega2)));
  const bool each = !rep.one_subtended_per_omega2.empty() &&
                    std::all_of(rep.one_subtended_per_omega2.begin(), rep.one_subtended_per_omega2.end(),
                                [](int c) { return c == 6480; });
  out.checks.push_back(check("each has 6480 one-subtended ovoids", each));
  out.checks.push_back(check("every theta in {1,2}", rep.theta_in_1_2));
  out.checks.push_back(check("theta accounting per record", rep.accounting_ok));
  out.diagnostics = {{"total", rep.total},
                     {"omega1", rep.omega1},
                     {"omega2", rep.omega2},
                     {"grids", en.grids},
                     {"closures", en.closures}};
}

const char* title_of(int id) {
  switch (id) {
    case 1: return "constructions";
    case 2: return "theta census";
    case 3: return "lower decomposition q=2";
    case 4: return "initial object q=2";
    case 5: return "semipartial geometry parameters";
    case 6: return "reconstruction";
    case 7: return "condition (C) planarity";
    case 8: return "grid extension";
    case 9: return "higher decomposition";
    case 10: return "Aut(E) two ways";
    case 11: return "Kantor-Knuth census q=9";
  }
  return "unknown";
}

}  // namespace

bool CriterionOutcome::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Verdict& v) { return v.pass; });
}

ConstructionCache::ConstructionCache(const SuiteOptions& options) : options_(options) {
  if (options_.cache_dir.empty()) {
    if (const char* env = std::getenv("GQCOV_CACHE")) options_.cache_dir = env;
  }
}

std::string ConstructionCache::path_for(const std::string& key) const {
  return (fs::path(options_.cache_dir) / (key + ".json")).string();
}

EmbeddedPair ConstructionCache::pair(const std::string& key) {
  if (auto it = pairs_.find(key); it != pairs_.end()) return it->second;
  EmbeddedPair p;
  const bool cached = !options_.cache_dir.empty() && fs::exists(path_for(key));
  if (cached) {
    Json j = read_json(path_for(key));
    auto ambient = std::make_shared<const IncidenceStructure>(geometry_from_json(j.at("ambient")));
    p = EmbeddedPair{ambient, embedding_from_json(ambient, j.at("embedding"))};
  } else if (options_.no_build) {
    throw GeometryError("missing cached input " + key +
                        (options_.cache_dir.empty() ? " (no cache directory; set GQCOV_CACHE)"
                                                    : " in " + options_.cache_dir));
  } else {
    p = build_pair(key);
  }
  const Json j = pair_json(p);
  if (!cached && !options_.cache_dir.empty()) write_json(path_for(key), j);
  digests_[key] = fnv1a_hex(j.dump());
  pairs_.emplace(key, p);
  return p;
}

KantorKnuthGQ ConstructionCache::kantor_knuth(int q) {
  const std::string key = "kk-" + str(q);
  KantorKnuthGQ kk;
  const bool cached = !options_.cache_dir.empty() && fs::exists(path_for(key));
  if (cached) {
    Json j = read_json(path_for(key));
    kk.geometry = std::make_shared<const IncidenceStructure>(geometry_from_json(j.at("geometry")));
    kk.line_infinity = j.at("line_inf").get<int>();
    kk.classical = j.at("classical").get<bool>();
    kk.spec.q = q;
  } else if (options_.no_build) {
    throw GeometryError("missing cached input " + key +
                        (options_.cache_dir.empty() ? " (no cache directory; set GQCOV_CACHE)"
                                                    : " in " + options_.cache_dir));
  } else {
    QClanSpec spec;
    spec.q = q;
    kk = build_kantor_knuth(spec);
  }
  const Json j{{"geometry", geometry_to_json(*kk.geometry)}, {"line_inf", kk.line_infinity}, {"classical", kk.classical}};
  if (!cached && !options_.cache_dir.empty()) write_json(path_for(key), j);
  digests_[key] = fnv1a_hex(j.dump());
  return kk;
}

CriterionOutcome evaluate_criterion(int id, ConstructionCache& cache, const SuiteOptions& options) {
  CriterionOutcome out;
  out.id = id;
  out.title = title_of(id);
  const auto start = std::chrono::steady_clock::now();
  switch (id) {
    case 1: constructions(out, cache); break;
    case 2: theta_censuses(out, cache); break;
    case 3: lower_q2(out, cache, options); break;
    case 4: initial_object(out, cache, options); break;
    case 5: spg_checks(out, cache); break;
    case 6: reconstruction(out, cache, options); break;
    case 7: condition_c(out, cache, options); break;
    case 8: extension(out, cache, options); break;
    case 9: higher(out, cache, options); break;
    case 10: brown(out, cache, options); break;
    case 11: kk_census(out, cache, options); break;
    default: throw GeometryError("no criterion " + str(id));
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

CriterionOutcome lower_decomposition_q3(ConstructionCache& cache, const SuiteOptions& options) {
  CriterionOutcome out;
  out.title = "lower decomposition q=3";
  const auto start = std::chrono::steady_clock::now();
  auto ep = cache.pair("q5q4-3");
  DerivedPair pair = build_derived_pair(ep.embedding);
  auto fpi = factorize_lower(pair, pair.pi_morphism());
  out.checks.push_back(check("factorize(pi) is the identity", fpi.alpha == identity_morphism(pair.E)));

  auto aut = automorphism_group(*pair.E, options.budget);
  std::vector<GeometryMorphism> gammas{pair.pi_morphism()};
  std::vector<FactorizationResult> fs{fpi};
  long covers = 0, factorized = 0;
  for (const auto& g : aut.generators()) {
    auto alpha = as_morphism(pair.E, g);
    auto gamma = compose(alpha, pair.pi_morphism());
    covers += verify_cover(gamma).ok();
    auto f = factorize_lower(pair, gamma);
    factorized += f.alpha == alpha;
    gammas.push_back(gamma);
    fs.push_back(std::move(f));
  }
  const long n = static_cast<long>(aut.generators().size());
  out.checks.push_back(check("alpha o pi is a cover for every generator", covers == n, str(covers) + "/" + str(n)));
  out.checks.push_back(check("alpha o pi factorizes back to alpha", factorized == n, str(factorized) + "/" + str(n)));
  long unique = 0, pairs = 0;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    for (std::size_t j = 0; j < gammas.size(); ++j) {
      auto ij = connecting_automorphism(gammas[i], fs[i], gammas[j], fs[j]);
      auto ji = connecting_automorphism(gammas[j], fs[j], gammas[i], fs[i]);
      ++pairs;
      unique += ij.commutes && ij.unique && ij.delta == inverse_automorphism(ji.delta);
    }
  }
  out.checks.push_back(check("connecting delta unique and inverse-symmetric", unique == pairs,
                             str(unique) + "/" + str(pairs)));
  out.diagnostics["aut_E"] = aut.order();
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

bool RunManifest::pass() const {
  return !verdicts.empty() && std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

std::string RunManifest::first_failure() const {
  for (const auto& v : verdicts)
    if (!v.pass) return v.name;
  return {};
}

Json manifest_to_json(const RunManifest& m) {
  Json verdicts = Json::array();
  for (const auto& v : m.verdicts) verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = m.command;
  j["parameters"] = m.parameters;
  j["input_digests"] = m.input_digests;
  j["verdicts"] = verdicts;
  j["verdict"] = m.pass() ? "pass" : "fail";
  j["first_failure"] = m.first_failure();
  j["diagnostics"] = m.diagnostics;
  j["timings"] = m.timings;
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"constructions", "lower-q2",    "lower-q3",   "spg-all",
                                                 "reconstruct",   "extension-grid", "higher-q2q3", "kk-q9"};
  return names;
}

RunManifest run_suite(const std::string& name, const SuiteOptions& options) {
  std::vector<int> criteria;
  bool q3 = false;
  if (name == "constructions") criteria = {1, 2};
  else if (name == "lower-q2") criteria = {3, 4};
  else if (name == "lower-q3") q3 = true;
  else if (name == "spg-all") criteria = {5};
  else if (name == "reconstruct") criteria = {6, 7};
  else if (name == "extension-grid") criteria = {8};
  else if (name == "higher-q2q3") criteria = {9, 10};
  else if (name == "kk-q9") criteria = {11};
  else throw GeometryError("unknown suite: " + name);

  RunManifest m;
  m.command = "run-suite " + name;
  m.parameters = {{"seed", options.seed}, {"budget", options.budget}, {"samples", options.samples},
                  {"no_build", options.no_build}};
  ConstructionCache cache(options);
  auto absorb = [&](const CriterionOutcome& c, const std::string& label) {
    for (const auto& v : c.checks) m.verdicts.push_back({label + ": " + v.name, v.pass, v.detail});
    if (!c.diagnostics.empty()) m.diagnostics[label] = c.diagnostics;
    m.timings[label] = c.seconds;
  };
  if (q3) absorb(lower_decomposition_q3(cache, options), "lower-q3");
  for (int id : criteria) absorb(evaluate_criterion(id, cache, options), "criterion " + str(id));
  m.input_digests = cache.digests();
  if (!options.out_dir.empty()) write_json((fs::path(options.out_dir) / (name + ".json")).string(), manifest_to_json(m));
  return m;
}

}  // namespace gqcov
