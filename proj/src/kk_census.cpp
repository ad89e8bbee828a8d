#include "gqcov/kk_census.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "gqcov/errors.hpp"

namespace gqcov {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::vector<int> full_lines(const IncidenceStructure& g, const std::vector<char>& in) {
  std::vector<int> out;
  for (int l = 0; l < g.line_count(); ++l) {
    auto row = g.points_on(l);
    if (std::all_of(row.begin(), row.end(), [&](int y) { return in[y] != 0; })) out.push_back(l);
  }
  return out;
}

bool meets(const IncidenceStructure& g, int l, int m) {
  auto a = g.points_on(l);
  auto b = g.points_on(m);
  for (int x : a)
    if (std::binary_search(b.begin(), b.end(), x)) return true;
  return false;
}

class Bits {
 public:
  explicit Bits(int n) : w_((n + 63) / 64, 0) {}
  Bits(int n, const PointSet& members) : Bits(n) {
    for (int x : members) w_[x >> 6] |= std::uint64_t{1} << (x & 63);
  }
  bool test(int x) const { return (w_[x >> 6] >> (x & 63)) & 1; }

 private:
  std::vector<std::uint64_t> w_;
};

const char* kCheckpointFile = "kk_progress.json";

void write_atomic(const fs::path& path, const json& j) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw GeometryError("cannot write checkpoint " + tmp.string());
    out << j.dump();
    if (!out) throw GeometryError("checkpoint write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

json census_json(const ThetaCensus& c) {
  json counts = json::object();
  for (const auto& [theta, n] : c.counts) counts[std::to_string(theta)] = n;
  return counts;
}

ThetaCensus census_from_json(const json& counts, int external_points) {
  ThetaCensus c;
  for (const auto& [k, v] : counts.items()) {
    c.counts[std::stoi(k)] = v.get<int>();
    c.ovoid_count += v.get<int>();
  }
  c.external_points = external_points;
  c.uniform = c.counts.size() == 1;
  c.theta = c.uniform ? c.counts.begin()->first : 0;
  return c;
}

void fill_from_census(SubGQRecord& rec) {
  rec.doubly_subtended = rec.census.uniform && rec.census.theta == 2;
  auto it = rec.census.counts.find(1);
  rec.one_subtended_ovoid_count = it == rec.census.counts.end() ? 0 : it->second;
  rec.orbit_label = rec.doubly_subtended ? OrbitLabel::Omega1 : OrbitLabel::Omega2;
}

}  // namespace

ClosureResult span_closure(const IncidenceStructure& g, std::span<const int> seed_points,
                           std::span<const int> seed_lines, int cap) {
  const int n = g.point_count();
  std::vector<char> in(n, 0);
  std::vector<int> hits(g.line_count(), 0);
  std::vector<int> order;
  std::size_t head = 0;
  bool capped = false;

  auto add = [&](int p) {
    if (in[p]) return;
    in[p] = 1;
    order.push_back(p);
    if (cap > 0 && static_cast<int>(order.size()) > cap) capped = true;
  };
  for (int p : seed_points) {
    g.check_point(p);
    add(p);
  }
  for (int l : seed_lines) {
    g.check_line(l);
    for (int p : g.points_on(l)) add(p);
  }
  while (!capped && head < order.size()) {
    const int p = order[head++];
    for (int l : g.lines_through(p)) {
      if (++hits[l] != 2) continue;
      for (int y : g.points_on(l)) add(y);
      if (capped) break;
    }
  }

  ClosureResult res;
  res.points.assign(order.begin(), order.end());
  std::sort(res.points.begin(), res.points.end());
  if (capped) {
    res.kind = ClosureResult::Kind::Capped;
    return res;
  }
  res.lines = full_lines(g, in);
  if (static_cast<int>(res.points.size()) == n) {
    res.kind = ClosureResult::Kind::Whole;
    return res;
  }
  std::vector<int> index(n, -1);
  for (std::size_t i = 0; i < res.points.size(); ++i) index[res.points[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> rows;
  rows.reserve(res.lines.size());
  for (int l : res.lines) {
    std::vector<int> row;
    for (int y : g.points_on(l)) row.push_back(index[y]);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return res;
  auto sub = IncidenceStructure::create("closure", static_cast<int>(res.points.size()), std::move(rows));
  auto check = verify_gq_axioms(sub);
  if (check.ok() && check.order->s >= 1 && check.order->t >= 1) res.kind = ClosureResult::Kind::ProperSubGQ;
  return res;
}

void classify_record(std::shared_ptr<const IncidenceStructure> g, SubGQRecord& rec) {
  auto emb = full_subgeometry_on(std::move(g), rec.points);
  rec.lines = emb.lines();
  rec.census = theta_census(emb);
  fill_from_census(rec);
}

SubGQEnumeration enumerate_subgqs_through_line(std::shared_ptr<const IncidenceStructure> gp, int line_inf,
                                               const EnumerationOptions& options) {
  const IncidenceStructure& g = *gp;
  g.check_line(line_inf);
  auto ambient = verify_gq_axioms(g);
  if (!ambient.ok()) throw HypothesisError("ambient is not a generalized quadrangle");
  const int s = ambient.order->s;
  const int grid_size = (s + 1) * (s + 1);
  const int target = (s + 1) * (s * s + 1);
  const int np = g.point_count();
  const int nl = g.line_count();

  SubGQEnumeration res;
  std::vector<Bits> found_masks;
  std::vector<char> line_done(nl, 0);
  int cursor = 0;

  const fs::path dir = options.checkpoint_dir;
  const fs::path ck = dir.empty() ? fs::path() : dir / kCheckpointFile;
  if (!dir.empty()) fs::create_directories(dir);

  if (!ck.empty() && fs::exists(ck)) {
    std::ifstream in(ck);
    json j = json::parse(in);
    if (j.at("points").get<int>() != np || j.at("lines").get<int>() != nl ||
        j.at("line_inf").get<int>() != line_inf) {
      throw GeometryError("checkpoint " + ck.string() + " belongs to a different geometry");
    }
    cursor = j.at("cursor").get<int>();
    res.grids = j.at("grids").get<long>();
    res.closures = j.at("closures").get<long>();
    for (int l : j.at("done_lines")) line_done[l] = 1;
    for (const auto& r : j.at("records")) {
      SubGQRecord rec;
      rec.points = r.at("points").get<PointSet>();
      if (r.contains("census")) {
        rec.census = census_from_json(r.at("census"), np - static_cast<int>(rec.points.size()));
        fill_from_census(rec);
      }
      found_masks.emplace_back(np, rec.points);
      res.records.push_back(std::move(rec));
    }
    res.resumed = true;
  }

  auto save = [&](int next, bool with_census) {
    if (ck.empty()) return;
    json j;
    j["schema_version"] = 1;
    j["points"] = np;
    j["lines"] = nl;
    j["line_inf"] = line_inf;
    j["cursor"] = next;
    j["grids"] = res.grids;
    j["closures"] = res.closures;
    std::vector<int> done;
    for (int l = next; l < nl; ++l)
      if (line_done[l]) done.push_back(l);
    j["done_lines"] = done;
    json recs = json::array();
    for (const auto& r : res.records) {
      json o;
      o["points"] = r.points;
      if (with_census && r.census.ovoid_count > 0) o["census"] = census_json(r.census);
      recs.push_back(std::move(o));
    }
    j["records"] = std::move(recs);
    write_atomic(ck, j);
  };

  auto last_save = std::chrono::steady_clock::now();
  auto due = [&] {
    auto now = std::chrono::steady_clock::now();
    if (std::chrono::duration<double>(now - last_save).count() < options.checkpoint_interval) return false;
    last_save = now;
    return true;
  };

  std::vector<int> count(np, 0);
  bool out_of_budget = false;

  for (; cursor < nl && !out_of_budget; ++cursor) {
    const int m = cursor;
    if (m == line_inf || line_done[m] || meets(g, m, line_inf)) continue;
    const int seed_lines[2] = {line_inf, m};
    auto grid = span_closure(g, {}, seed_lines, grid_size);
    if (grid.kind == ClosureResult::Kind::Capped || static_cast<int>(grid.points.size()) != grid_size) {
      throw HypothesisError("line " + std::to_string(line_inf) + " is not regular: closure with line " +
                            std::to_string(m) + " is not a grid");
    }
    for (int l : grid.lines)
      if (!meets(g, l, line_inf)) line_done[l] = 1;
    ++res.grids;

    Bits in_grid(np, grid.points);
    std::fill(count.begin(), count.end(), 0);
    for (int p : grid.points)
      for (int l : g.lines_through(p))
        if (!std::binary_search(grid.lines.begin(), grid.lines.end(), l))
          for (int y : g.points_on(l))
            if (y != p) ++count[y];

    std::vector<std::size_t> containing;
    for (std::size_t i = 0; i < found_masks.size(); ++i) {
      bool all = std::all_of(grid.points.begin(), grid.points.end(), [&](int p) { return found_masks[i].test(p); });
      if (all) containing.push_back(i);
    }

    std::vector<int> seed(grid.points);
    seed.push_back(-1);
    for (int x = 0; x < np; ++x) {
      if (count[x] != s + 1 || in_grid.test(x)) continue;
      if (std::any_of(containing.begin(), containing.end(), [&](std::size_t i) { return found_masks[i].test(x); }))
        continue;
      if (options.closure_budget > 0 && res.closures >= options.closure_budget) {
        out_of_budget = true;
        break;
      }
      ++res.closures;
      seed.back() = x;
      auto cl = span_closure(g, seed, {}, target);
      if (cl.kind != ClosureResult::Kind::ProperSubGQ || static_cast<int>(cl.points.size()) != target) continue;
      SubGQRecord rec;
      rec.points = std::move(cl.points);
      rec.lines = std::move(cl.lines);
      found_masks.emplace_back(np, rec.points);
      containing.push_back(found_masks.size() - 1);
      res.records.push_back(std::move(rec));
    }
    if (out_of_budget) break;
    if (due()) {
      save(cursor + 1, false);
      if (options.progress)
        options.progress("grids " + std::to_string(res.grids) + ", subquadrangles " +
                         std::to_string(res.records.size()));
    }
  }
  res.complete = cursor >= nl;
  res.authoritative = res.complete && !out_of_budget;
  if (res.complete) save(cursor, false);

  if (!options.skip_census) {
    for (std::size_t i = 0; i < res.records.size(); ++i) {
      auto& rec = res.records[i];
      if (rec.census.ovoid_count == 0) {
        classify_record(gp, rec);
      } else if (rec.lines.empty()) {
        std::vector<char> in(np, 0);
        for (int p : rec.points) in[p] = 1;
        rec.lines = full_lines(g, in);
      }
      if (due()) {
        save(cursor, true);
        if (options.progress)
          options.progress("census " + std::to_string(i + 1) + "/" + std::to_string(res.records.size()));
      }
    }
    save(cursor, true);
  }

  std::sort(res.records.begin(), res.records.end(),
            [](const SubGQRecord& a, const SubGQRecord& b) { return a.points < b.points; });
  if (res.authoritative && options.expected_total &&
      static_cast<int>(res.records.size()) != *options.expected_total) {
    throw ConsistencyViolation("found " + std::to_string(res.records.size()) + " subquadrangles, expected " +
                               std::to_string(*options.expected_total));
  }
  return res;
}

OrbitReport census_report(const std::vector<SubGQRecord>& records, int q, int ambient_points, bool enforce) {
  OrbitReport rep;
  rep.total = static_cast<int>(records.size());
  rep.theta_in_1_2 = true;
  rep.accounting_ok = true;
  for (const auto& r : records) {
    if (r.doubly_subtended) {
      ++rep.omega1;
    } else {
      ++rep.omega2;
      rep.one_subtended_per_omega2.push_back(r.one_subtended_ovoid_count);
    }
    int external = 0;
    for (const auto& [theta, n] : r.census.counts) {
      if (theta != 1 && theta != 2) rep.theta_in_1_2 = false;
      external += theta * n;
    }
    if (external != ambient_points - static_cast<int>(r.points.size())) rep.accounting_ok = false;
  }
  const int q2 = q * q;
  const int per = (q + 1) * q2 * (q - 1);
  rep.counts_match = rep.total == q2 * q + q2 && rep.omega1 == 2 * q2 && rep.omega2 == (q - 1) * q2 &&
                     std::all_of(rep.one_subtended_per_omega2.begin(), rep.one_subtended_per_omega2.end(),
                                 [&](int c) { return c == per; });
  if (enforce && !(rep.counts_match && rep.accounting_ok && rep.theta_in_1_2)) {
    throw ConsistencyViolation("census counts: total " + std::to_string(rep.total) + ", doubly subtended " +
                               std::to_string(rep.omega1) + ", other " + std::to_string(rep.omega2));
  }
  return rep;
}

}  // namespace gqcov
