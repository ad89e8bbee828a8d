// Command-line front end for the gqcov library.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "gqcov/automorphisms.hpp"
#include "gqcov/constructions.hpp"
#include "gqcov/covers.hpp"
#include "gqcov/errors.hpp"
#include "gqcov/io.hpp"
#include "gqcov/kk_census.hpp"
#include "gqcov/spg.hpp"
#include "gqcov/subtension.hpp"
#include "gqcov/suites.hpp"

using namespace gqcov;
namespace fs = std::filesystem;

namespace {

constexpr int kSchemaVersion = 1;

Json report(const std::string& command, bool pass) {
  return Json{{"schema_version", kSchemaVersion}, {"command", command}, {"verdict", pass ? "pass" : "fail"}};
}

void emit(const Json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(1) << '\n';
  else
    write_json(out, j);
}

Json census_to_json(const ThetaCensus& c) {
  Json counts = Json::object();
  for (const auto& [theta, n] : c.counts) counts[std::to_string(theta)] = n;
  return Json{{"counts", counts},
              {"ovoids", c.ovoid_count},
              {"external_points", c.external_points},
              {"uniform", c.uniform},
              {"theta", c.theta}};
}

Json perms_to_json(const std::vector<Perm>& ps, int point_count) {
  Json arr = Json::array();
  for (const auto& p : ps) arr.push_back(perm_to_json(p, point_count));
  return arr;
}

DerivedPair load_derived(const std::string& dir) {
  auto p = read_pair(dir);
  return build_derived_pair(p.embedding);
}

EmbeddedPair construct_family(const std::string& family, int q, int sigma, bool& embedded,
                              std::shared_ptr<const IncidenceStructure>& single) {
  embedded = true;
  if (family == "q5q4") return build_Q5_with_Q4(q);
  if (family == "q4q3") return build_Q4_with_Q3(q);
  if (family == "q5q3") return build_Q5_with_Q3(q);
  if (family == "h4h3") return build_H4_with_H3(q);
  embedded = false;
  if (family == "grid") single = std::make_shared<const IncidenceStructure>(build_grid(q));
  else if (family == "w") single = std::make_shared<const IncidenceStructure>(build_W(q));
  else if (family == "q4") single = std::make_shared<const IncidenceStructure>(build_Q4(q));
  else if (family == "kk") {
    QClanSpec spec;
    spec.q = q;
    spec.sigma = sigma;
    single = build_kantor_knuth(spec).geometry;
  } else {
    throw GeometryError("unknown family: " + family);
  }
  return {};
}

std::vector<int> parse_expect(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stoi(item));
  if (v.size() != 4) throw GeometryError("--expect needs four comma-separated integers");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized quadrangles, subtended ovoids and their covers"};
  app.require_subcommand(1);

  long budget = kDefaultSearchBudget;
  std::uint64_t seed = 0;
  std::string out;

  // construct
  auto* construct = app.add_subcommand("construct", "Build a geometry (and its distinguished subquadrangle)");
  std::string family;
  int q = 2;
  int sigma = 3;
  std::string pair_dir;
  construct->add_option("--family", family, "grid|w|q4|q5q4|q4q3|q5q3|h4h3|kk")->required();
  construct->add_option("--q", q, "Field order, or grid parameter s; for h4h3 the square root of the field order");
  construct->add_option("--sigma", sigma, "Kantor-Knuth field automorphism exponent");
  construct->add_option("--out", out, "Geometry file");
  construct->add_option("--pair-dir", pair_dir, "Also write ambient.json and embedding.json here");

  // subtend
  auto* subtend = app.add_subcommand("subtend", "Derived geometries A, E and the projection pi");
  std::string ambient_file, embedding_file;
  subtend->add_option("--ambient", ambient_file)->required();
  subtend->add_option("--embedding", embedding_file)->required();
  subtend->add_option("--out", out, "Output directory")->required();

  // covers
  std::string pair, cover_file;
  auto* factorize = app.add_subcommand("factorize", "Factorize a cover A -> E through pi");
  factorize->add_option("--pair", pair)->required();
  factorize->add_option("--cover", cover_file)->required();
  factorize->add_option("--out", out);

  auto* enumerate = app.add_subcommand("enumerate-covers", "All covers A -> E");
  enumerate->add_option("--pair", pair)->required();
  enumerate->add_option("--budget", budget);
  enumerate->add_option("--out", out);

  auto* reconstruct = app.add_subcommand("reconstruct", "Rebuild a quadrangle from a theta-cover");
  reconstruct->add_option("--pair", pair)->required();
  reconstruct->add_option("--cover", cover_file)->required();
  reconstruct->add_option("--out", out);

  auto* condc = app.add_subcommand("condition-c", "Sample W-sets and test planarity");
  int samples = 100;
  std::string reading = "literal";
  condc->add_option("--pair", pair)->required();
  condc->add_option("--samples", samples);
  condc->add_option("--seed", seed);
  condc->add_option("--reading", reading)->check(CLI::IsMember({"literal", "proof-implied"}));
  condc->add_option("--out", out);

  // automorphisms
  auto* aut = app.add_subcommand("aut", "Automorphism group of a geometry");
  std::string geometry_file, stabilize_file;
  aut->add_option("--geometry", geometry_file)->required();
  aut->add_option("--stabilize", stabilize_file, "Embedding file of a subgeometry to stabilize");
  aut->add_option("--budget", budget);
  aut->add_option("--out", out);

  auto* extend = app.add_subcommand("extend", "Extensions of a subquadrangle automorphism");
  std::string phi_file;
  bool all = false;
  extend->add_option("--ambient", ambient_file)->required();
  extend->add_option("--embedding", embedding_file)->required();
  extend->add_option("--phi", phi_file, "Permutation of the subquadrangle (sub-geometry indices)")->required();
  extend->add_flag("--all", all);
  extend->add_option("--budget", budget);
  extend->add_option("--out", out);

  // spg
  auto* spg = app.add_subcommand("spg-check", "Semipartial geometry parameters");
  std::string expect;
  spg->add_option("--geometry", geometry_file)->required();
  spg->add_option("--expect", expect, "s,t,a,m");
  spg->add_option("--out", out);

  // kk census
  auto* kk = app.add_subcommand("kk-census", "Subquadrangles of the Kantor-Knuth GQ through [inf]");
  int kk_q = 9;
  std::string checkpoint;
  kk->add_option("--q", kk_q);
  kk->add_option("--checkpoint", checkpoint);
  kk->add_option("--out", out);

  // suites
  auto* suite = app.add_subcommand("run-suite", "Run a named verification suite");
  std::string suite_name;
  bool no_build = false;
  suite->add_option("name", suite_name)->required()->check(CLI::IsMember(suite_names()));
  suite->add_option("--out", out, "Manifest directory");
  suite->add_option("--seed", seed);
  suite->add_option("--budget", budget);
  suite->add_option("--samples", samples);
  suite->add_flag("--no-build", no_build, "Fail when a cached construction is missing");

  CLI11_PARSE(app, argc, argv);

  try {
    if (construct->parsed()) {
      bool embedded = false;
      std::shared_ptr<const IncidenceStructure> single;
      auto p = construct_family(family, q, sigma, embedded, single);
      if (embedded) {
        if (!out.empty()) {
          write_geometry(out, *p.ambient);
          fs::path emb = out;
          emb.replace_extension(".embedding.json");
          write_json(emb.string(), embedding_to_json(p.embedding));
        }
        if (!pair_dir.empty()) write_pair(pair_dir, p);
        if (out.empty() && pair_dir.empty()) std::cout << geometry_to_json(*p.ambient).dump() << '\n';
      } else if (!out.empty()) {
        write_geometry(out, *single);
      } else {
        std::cout << geometry_to_json(*single).dump() << '\n';
      }
      return 0;
    }

    if (subtend->parsed()) {
      auto ambient = read_geometry(ambient_file);
      auto emb = embedding_from_json(ambient, read_json(embedding_file));
      auto d = build_derived_pair(emb);
      fs::path dir(out);
      write_geometry((dir / "A.json").string(), *d.A);
      write_geometry((dir / "E.json").string(), *d.E);
      write_pair(out, {ambient, emb});
      if (d.pi) write_json((dir / "pi.json").string(), morphism_to_json(d.pi->morphism));
      Json r = report("subtend", true);
      r["census"] = census_to_json(d.census);
      r["hyperplane"] = d.hyperplane;
      r["A"] = {d.A->point_count(), d.A->line_count()};
      r["E"] = {d.E->point_count(), d.E->line_count()};
      write_json((dir / "census.json").string(), r);
      std::cout << r.dump(1) << '\n';
      return 0;
    }

    if (factorize->parsed()) {
      auto d = load_derived(pair);
      auto gamma = morphism_from_json(d.A, d.E, read_json(cover_file));
      auto f = factorize_lower(d, gamma);
      const bool ok = is_automorphism(f.alpha) && compose(f.alpha, d.pi_morphism()) == gamma;
      Json r = report("factorize", ok);
      r["alpha"] = morphism_to_json(f.alpha);
      r["zeta"] = {{"points", f.zeta}, {"lines", f.zeta_lines}};
      r["orientation"] = f.orientation == ZetaOrientation::Forward ? "forward" : "inverse";
      emit(r, out);
      return ok ? 0 : 1;
    }

    if (enumerate->parsed()) {
      auto d = load_derived(pair);
      auto en = enumerate_covers(d.A, d.E, budget);
      Json covers = Json::array();
      for (const auto& c : en.covers) covers.push_back(morphism_to_json(c.morphism));
      Json r = report("enumerate-covers", true);
      r["count"] = en.covers.size();
      r["nodes"] = en.nodes;
      r["covers"] = covers;
      emit(r, out);
      return 0;
    }

    if (reconstruct->parsed()) {
      auto d = load_derived(pair);
      auto gamma = morphism_from_json(d.A, d.E, read_json(cover_file));
      auto rec = reconstruct_chi(d, gamma);
      Json r = report("reconstruct", rec.ok());
      if (rec.ok()) {
        const auto& v = *rec.value;
        r["order"] = {v.order.s, v.order.t};
        r["chi"] = geometry_to_json(*v.chi);
        r["chi_prime"] = embedding_to_json(v.chi_prime);
        r["sigma_star"] = v.sigma_star;
        auto id = identify_chi_prime(v, d);
        r["identification"] = {{"ok", id.ok}, {"double_star", id.double_star}, {"witness", id.witness}};
      } else {
        r["failure"] = static_cast<int>(rec.failure);
        r["witness"] = rec.witness;
      }
      emit(r, out);
      return rec.ok() ? 0 : 1;
    }

    if (condc->parsed()) {
      auto d = load_derived(pair);
      auto rd = reading == "literal" ? ConditionCReading::Literal : ConditionCReading::ProofImplied;
      auto sample = condition_c_instances(d, samples, seed, rd);
      long single_coplanar = 0, multi_coplanar = 0;
      for (const auto& i : sample.single) single_coplanar += condition_c_planarity(d, i);
      for (const auto& i : sample.multi) multi_coplanar += condition_c_planarity(d, i);
      const bool ok = static_cast<int>(sample.single.size()) == samples &&
                      static_cast<int>(sample.multi.size()) == samples && single_coplanar == samples &&
                      multi_coplanar == 0;
      Json r = report("condition-c", ok);
      r["seed"] = seed;
      r["reading"] = reading;
      r["single"] = {{"count", sample.single.size()}, {"coplanar", single_coplanar}};
      r["multi"] = {{"count", sample.multi.size()}, {"coplanar", multi_coplanar}};
      r["attempts"] = sample.attempts;
      r["degenerate"] = sample.degenerate;
      emit(r, out);
      return ok ? 0 : 1;
    }

    if (aut->parsed()) {
      auto g = read_geometry(geometry_file);
      Json r = report("aut", true);
      if (stabilize_file.empty()) {
        auto grp = automorphism_group(*g, budget);
        r["order"] = grp.order();
        r["generators"] = perms_to_json(grp.generators(), g->point_count());
      } else {
        auto emb = embedding_from_json(g, read_json(stabilize_file));
        auto grp = subgeometry_stabilizer(emb, budget);
        r["order"] = grp.order();
        r["generators"] = perms_to_json(grp.generators(), g->point_count());
      }
      emit(r, out);
      return 0;
    }

    if (extend->parsed()) {
      auto ambient = read_geometry(ambient_file);
      auto emb = embedding_from_json(ambient, read_json(embedding_file));
      auto phi = perm_from_json(read_json(phi_file), emb.sub().point_count(), emb.sub().line_count());
      auto rep = extend_automorphism(emb, point_part(phi, emb.sub().point_count()),
                                     all ? ExtensionMode::FindAll : ExtensionMode::FindOne, budget);
      Json r = report("extend", !rep.extensions.empty());
      r["extensions"] = perms_to_json(rep.extensions, ambient->point_count());
      r["count"] = rep.extensions.size();
      if (all) {
        r["kernel_order"] = rep.kernel_order;
        r["bijection_with_kernel"] = rep.bijection_with_kernel;
      }
      r["nodes"] = rep.nodes;
      emit(r, out);
      return rep.extensions.empty() ? 1 : 0;
    }

    if (spg->parsed()) {
      auto g = read_geometry(geometry_file);
      std::optional<SPGParameters> want;
      if (!expect.empty()) {
        auto v = parse_expect(expect);
        want = SPGParameters{v[0], v[1], v[2], v[3]};
      }
      auto res = verify_spg(*g, want);
      Json r = report("spg-check", res.ok());
      if (res.params) {
        const auto& p = *res.params;
        r["parameters"] = {{"s", p.s_star}, {"t", p.t_star}, {"alpha", p.alpha_star}, {"mu", p.mu_star}};
      }
      r["alpha_vacuous"] = res.alpha_vacuous;
      r["mu_vacuous"] = res.mu_vacuous;
      if (!res.failure.empty()) r["failure"] = res.failure;
      if (!res.witness.empty()) r["witness"] = res.witness;
      emit(r, out);
      return res.ok() ? 0 : 1;
    }

    if (kk->parsed()) {
      QClanSpec spec;
      spec.q = kk_q;
      auto g = build_kantor_knuth(spec);
      EnumerationOptions eo;
      eo.checkpoint_dir = checkpoint;
      eo.progress = [](const std::string& s) { std::cerr << s << '\n'; };
      auto en = enumerate_subgqs_through_line(g.geometry, g.line_infinity, eo);
      auto rep = census_report(en.records, kk_q, g.geometry->point_count());
      Json r = report("kk-census", en.authoritative && rep.counts_match && rep.accounting_ok);
      r["total"] = rep.total;
      r["omega1"] = rep.omega1;
      r["omega2"] = rep.omega2;
      r["one_subtended_per_omega2"] = rep.one_subtended_per_omega2;
      r["authoritative"] = en.authoritative;
      emit(r, out);
      return r["verdict"] == "pass" ? 0 : 1;
    }

    if (suite->parsed()) {
      SuiteOptions so;
      so.out_dir = out;
      so.seed = seed;
      so.budget = budget;
      so.samples = samples;
      so.no_build = no_build;
      so.progress = [](const std::string& s) { std::cerr << s << '\n'; };
      auto m = run_suite(suite_name, so);
      for (const auto& v : m.verdicts)
        std::cout << (v.pass ? "pass " : "FAIL ") << v.name << (v.detail.empty() ? "" : " (" + v.detail + ")") << '\n';
      if (!m.pass()) {
        std::cerr << "first failing verdict: " << m.first_failure() << '\n';
        return 1;
      }
      return 0;
    }
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis not met: " << e.what() << '\n';
    return 3;
  } catch (const ConsistencyViolation& e) {
    std::cerr << e.what() << '\n';
    return 4;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 5;
  }
  return 0;
}
