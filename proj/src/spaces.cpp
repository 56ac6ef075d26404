#include "gda/spaces.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gda/canonical.hpp"

namespace gda {

std::string to_string(Presentation p) {
  switch (p) {
    case Presentation::Stu: return "stu";
    case Presentation::Ihx: return "ihx";
    case Presentation::StuIhx: return "stu+ihx";
  }
  return "?";
}

std::string to_string(Grading g) {
  return g == Grading::Grope ? "grope" : "vassiliev";
}

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
      .count();
}

SparseIntMatrix to_matrix(const Basis& b, const std::vector<RelationRow>& rows) {
  SparseIntMatrix m(0, static_cast<int>(b.keys.size()));
  for (const auto& row : rows) {
    std::vector<std::pair<int, BigInt>> ents;
    ents.reserve(row.entries.size());
    for (const auto& [key, coeff] : row.entries)
      ents.push_back({b.index.at(key), coeff});
    m.add_row(ents);
  }
  return m;
}

std::vector<std::pair<int, BigInt>> row_vector(const Basis& b,
                                               const RelationRow& row) {
  std::vector<std::pair<int, BigInt>> ents;
  ents.reserve(row.entries.size());
  for (const auto& [key, coeff] : row.entries)
    ents.push_back({b.index.at(key), coeff});
  return ents;
}

void tally(std::map<std::string, long long>& counts,
           const std::vector<RelationRow>& rows) {
  for (const auto& row : rows) counts[to_string(row.tag)]++;
}

// generation over [0, n) split across workers; chunk results keep basis order
template <class Gen>
std::vector<RelationRow> chunked_rows(const Basis& b, int workers, Gen gen) {
  int n = static_cast<int>(b.diagrams.size());
  if (workers <= 1 || n < 256) return gen(0, n);
  int parts = std::min(workers * 4, n);
  int chunk = (n + parts - 1) / parts;
  std::vector<std::vector<RelationRow>> out((n + chunk - 1) / chunk);
  std::vector<std::exception_ptr> errs(out.size());
  std::atomic<int> next{0};
  auto work = [&]() {
    for (;;) {
      int idx = next.fetch_add(1);
      if (idx >= static_cast<int>(out.size())) return;
      int lo = idx * chunk, hi = std::min(n, lo + chunk);
      try {
        out[idx] = gen(lo, hi);
      } catch (...) {
        errs[idx] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; w++) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  std::vector<RelationRow> rows;
  for (auto& part : out)
    for (auto& r : part) rows.push_back(std::move(r));
  return rows;
}

std::vector<RelationRow> loop_cut_rows(const Basis& b, int m, bool exact) {
  std::vector<RelationRow> rows;
  for (int i = 0; i < static_cast<int>(b.diagrams.size()); i++) {
    int l = degrees(b.diagrams[i]).loops;
    if (exact ? l != m : l < m) continue;
    RelationRow row;
    row.tag = RelTag::LoopCut;
    row.provenance = b.keys[i];
    row.entries[b.keys[i]] = b.signs[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string flags_hash(const std::string& grading,
                       const std::map<std::string, std::string>& flags) {
  std::string s = "grading=" + grading + ";";
  for (const auto& [k, v] : flags) s += k + "=" + v + ";";
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(s));
  return buf;
}

std::filesystem::path cache_path(const SpaceOptions& opt,
                                 const std::string& space,
                                 const std::string& grading,
                                 const std::map<std::string, std::string>& flags,
                                 int degree) {
  return std::filesystem::path(opt.cache_dir) / space /
         flags_hash(grading, flags) / (std::to_string(degree) + ".json");
}

std::optional<SpaceResult> cache_load(
    const SpaceOptions& opt, const std::string& space,
    const std::string& grading, const std::map<std::string, std::string>& flags,
    int degree) {
  if (opt.cache_dir.empty()) return std::nullopt;
  std::ifstream in(cache_path(opt, space, grading, flags, degree));
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    SpaceResult r = space_result_from_json(buf.str());
    if (r.space != space || r.degree != degree || r.grading != grading ||
        r.flags != flags)
      return std::nullopt;
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void cache_store(const SpaceOptions& opt, const SpaceResult& r) {
  if (opt.cache_dir.empty()) return;
  auto path = cache_path(opt, r.space, r.grading, r.flags, r.degree);
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) return;
  std::ofstream out(path);
  out << to_json(r);
}

std::vector<RelationRow> closed_presentation_rows(const Basis& b,
                                                  const SpaceOptions& opt) {
  std::vector<RelationRow> rows = as_rows(b);
  if (opt.presentation == Presentation::Stu ||
      opt.presentation == Presentation::StuIhx) {
    auto stu = chunked_rows(b, opt.workers,
                            [&](int lo, int hi) { return stu_rows(b, lo, hi); });
    for (auto& r : stu) rows.push_back(std::move(r));
  }
  if (opt.presentation == Presentation::Ihx ||
      opt.presentation == Presentation::StuIhx) {
    auto ihx = chunked_rows(b, opt.workers,
                            [&](int lo, int hi) { return ihx_rows(b, lo, hi); });
    for (auto& r : ihx) rows.push_back(std::move(r));
  }
  if (!opt.framed)
    for (auto& r : one_chord_rows(b)) rows.push_back(std::move(r));
  return rows;
}

std::map<std::string, std::string> closed_flags(const SpaceOptions& opt) {
  return {{"presentation", to_string(opt.presentation)},
          {"framed", opt.framed ? "true" : "false"}};
}

SpaceResult finish(const std::string& space, const std::string& grading,
                   int degree, std::map<std::string, std::string> flags,
                   const Assembled& a, const SpaceOptions& opt,
                   Clock::time_point t0) {
  SpaceResult r;
  r.space = space;
  r.degree = degree;
  r.grading = grading;
  r.basis_size = static_cast<long long>(a.basis.diagrams.size());
  tally(r.relation_counts, a.rows);
  r.group = cokernel(static_cast<int>(r.basis_size), to_matrix(a.basis, a.rows));
  r.flags = std::move(flags);
  r.wall_time_ms = ms_since(t0);
  cache_store(opt, r);
  return r;
}

}  // namespace

std::string to_json(const SpaceResult& r) {
  json j;
  j["space"] = r.space;
  j["degree"] = r.degree;
  j["grading"] = r.grading;
  j["basis_size"] = r.basis_size;
  j["relation_counts"] = r.relation_counts;
  std::vector<std::string> tors;
  for (const auto& t : r.group.torsion) tors.push_back(t.str());
  j["group"] = {{"rank", r.group.free_rank}, {"torsion", tors}};
  j["flags"] = r.flags;
  j["wall_time_ms"] = r.wall_time_ms;
  return j.dump(2) + "\n";
}

SpaceResult space_result_from_json(const std::string& text) {
  json j = json::parse(text);
  SpaceResult r;
  r.space = j.at("space").get<std::string>();
  r.degree = j.at("degree").get<int>();
  r.grading = j.at("grading").get<std::string>();
  r.basis_size = j.at("basis_size").get<long long>();
  r.relation_counts =
      j.at("relation_counts").get<std::map<std::string, long long>>();
  r.group.free_rank = j.at("group").at("rank").get<long long>();
  for (const auto& t : j.at("group").at("torsion"))
    r.group.torsion.push_back(BigInt(t.get<std::string>()));
  r.flags = j.at("flags").get<std::map<std::string, std::string>>();
  r.wall_time_ms = j.at("wall_time_ms").get<long long>();
  return r;
}

Assembled assemble_space(const std::string& space, int degree,
                         const SpaceOptions& opt) {
  Assembled a;
  if (space == "B" || space == "Bg") {
    Grading g = space == "Bg" ? Grading::Grope : Grading::Vassiliev;
    a.basis = Basis::from(enumerate_diagrams({Space::B, g, degree}));
    a.rows = as_rows(a.basis);
    auto ihx = chunked_rows(a.basis, opt.workers, [&](int lo, int hi) {
      return ihx_rows(a.basis, lo, hi);
    });
    for (auto& r : ihx) a.rows.push_back(std::move(r));
    return a;
  }
  if (space == "A" || space == "AI") {
    a.basis = Basis::from(
        enumerate_diagrams({Space::A, Grading::Vassiliev, degree}));
    a.rows = closed_presentation_rows(a.basis, opt);
    if (space == "AI")
      for (auto& r : decomposable_rows(a.basis)) a.rows.push_back(std::move(r));
    return a;
  }
  throw std::invalid_argument("assemble_space: unknown space " + space);
}

SpaceResult compute_B(Grading grading, int degree, const SpaceOptions& opt) {
  std::string space = grading == Grading::Grope ? "Bg" : "B";
  std::string gs = to_string(grading);
  if (auto hit = cache_load(opt, space, gs, {}, degree)) return *hit;
  auto t0 = Clock::now();
  Assembled a = assemble_space(space, degree, opt);
  return finish(space, gs, degree, {}, a, opt, t0);
}

SpaceResult compute_A(int degree, const SpaceOptions& opt) {
  auto flags = closed_flags(opt);
  if (auto hit = cache_load(opt, "A", "vassiliev", flags, degree)) return *hit;
  auto t0 = Clock::now();
  Assembled a = assemble_space("A", degree, opt);
  return finish("A", "vassiliev", degree, flags, a, opt, t0);
}

SpaceResult compute_A_indecomposable(int degree, const SpaceOptions& opt) {
  auto flags = closed_flags(opt);
  if (auto hit = cache_load(opt, "AI", "vassiliev", flags, degree)) return *hit;
  auto t0 = Clock::now();
  Assembled a = assemble_space("AI", degree, opt);
  return finish("AI", "vassiliev", degree, flags, a, opt, t0);
}

SpaceResult loop_quotient(int degree, int m, bool exact,
                          const SpaceOptions& opt) {
  if (m < 1) throw std::invalid_argument("loop_quotient: m must be >= 1");
  auto flags = closed_flags(opt);
  flags["mod_loops"] = std::to_string(m);
  flags["loops_exact"] = exact ? "true" : "false";
  if (auto hit = cache_load(opt, "AI", "vassiliev", flags, degree)) return *hit;
  auto t0 = Clock::now();
  Assembled a = assemble_space("AI", degree, opt);
  for (auto& r : loop_cut_rows(a.basis, m, exact)) a.rows.push_back(std::move(r));
  return finish("AI", "vassiliev", degree, flags, a, opt, t0);
}

SpaceResult conjecture_group(int k, const SpaceOptions& opt) {
  if (k < 3) throw std::invalid_argument("conjecture_group: k must be >= 3");
  auto t0 = Clock::now();
  SpaceResult r;
  r.space = "conjecture";
  r.degree = k;
  r.grading = "grope";
  r.flags = closed_flags(opt);
  std::vector<GradedAbelianGroup> parts;
  for (int j = 1; j <= k - 2; j++) {
    SpaceResult part = loop_quotient(k - j, j, false, opt);
    parts.push_back(part.group);
    r.basis_size += part.basis_size;
    for (const auto& [tag, n] : part.relation_counts)
      r.relation_counts[tag] += n;
  }
  r.group = direct_sum(parts);
  r.wall_time_ms = ms_since(t0);
  return r;
}

ChiCheck chi_rank_check(int degree, bool full, const SpaceOptions& opt) {
  ChiCheck out;
  out.full = full;

  Basis ob =
      Basis::from(enumerate_diagrams({Space::B, Grading::Vassiliev, degree}));
  std::vector<RelationRow> orows = as_rows(ob);
  {
    auto ihx = chunked_rows(
        ob, opt.workers, [&](int lo, int hi) { return ihx_rows(ob, lo, hi); });
    for (auto& r : ihx) orows.push_back(std::move(r));
  }
  int n_open = static_cast<int>(ob.diagrams.size());
  out.dim_open = n_open - rational_rank(to_matrix(ob, orows));

  Assembled ai = assemble_space("AI", degree, opt);
  int n_closed = static_cast<int>(ai.basis.diagrams.size());
  // merge rows eliminate best along falling trivalent count
  std::vector<int> ord(n_closed);
  std::iota(ord.begin(), ord.end(), 0);
  std::stable_sort(ord.begin(), ord.end(), [&](int x, int y) {
    return ai.basis.diagrams[x].num_trivalent() >
           ai.basis.diagrams[y].num_trivalent();
  });
  out.dim_closed = n_closed - rational_rank(to_matrix(ai.basis, ai.rows), &ord);
  out.ranks_equal = out.dim_open == out.dim_closed;
  if (!full) return out;

  SpanOracle span(n_closed);
  for (const auto& row : ai.rows) span.absorb(row_vector(ai.basis, row));

  // closing sums per open class, as closed-side coordinate rows
  std::vector<std::vector<std::pair<int, BigInt>>> closing(n_open);
  for (int i = 0; i < n_open; i++) {
    for (const auto& [key, coeff] : chi_vector(ob.diagrams[i])) {
      auto it = ai.basis.index.find(key);
      if (it == ai.basis.index.end())
        throw std::logic_error("closing sum leaves the closed basis: " + key);
      closing[i].push_back({it->second, coeff});
    }
  }

  out.well_defined = true;
  for (const auto& row : orows) {
    std::map<int, BigInt> img;
    for (const auto& [key, coeff] : row.entries) {
      int i = ob.index.at(key);
      for (const auto& [col, v] : closing[i])
        img[col] += BigInt(coeff) * ob.signs[i] * v;
    }
    std::vector<std::pair<int, BigInt>> vec(img.begin(), img.end());
    if (!span.contains(vec)) {
      out.well_defined = false;
      break;
    }
  }

  long long image_dim = 0;
  for (int i = 0; i < n_open; i++) image_dim += span.absorb(closing[i]);
  out.injective = image_dim == out.dim_open;
  return out;
}

ResidualCheck rho_symmetry_check(int grope_max, const SpaceOptions& opt) {
  ResidualCheck rc;
  for (int v = 1; v <= grope_max; v++) {
    int b1cap = grope_max - v;
    Assembled ai = assemble_space("AI", v, opt);
    int n = static_cast<int>(ai.basis.diagrams.size());
    std::vector<int> loops(n);
    for (int i = 0; i < n; i++) loops[i] = degrees(ai.basis.diagrams[i]).loops;

    for (int b1d = 0; b1d <= b1cap; b1d++) {
      bool any = false;
      for (int i = 0; i < n && !any; i++) any = loops[i] == b1d;
      if (!any) continue;
      SpanOracle span(n);
      for (int i = 0; i < n; i++)
        if (loops[i] > b1d) span.absorb({{i, 1}});
      for (const auto& row : ai.rows) span.absorb(row_vector(ai.basis, row));

      // reversal multiplies a class by the parity of its leg count; legs and
      // trivalent vertices agree mod 2, so on a connected stratum of grading
      // k = v + b1 the factor is (-1)^(k+1)
      int sign_par = (v + b1d) % 2 == 0 ? -1 : 1;
      for (int i = 0; i < n; i++) {
        if (loops[i] != b1d) continue;
        if (num_components(ai.basis.diagrams[i]) != 1) continue;
        SignedCanonical rev = canonical_form(reverse_circle(ai.basis.diagrams[i]));
        auto it = ai.basis.index.find(rev.key);
        if (it == ai.basis.index.end())
          throw std::logic_error("circle reversal leaves the basis: " + rev.key);
        std::map<int, BigInt> resid;
        resid[it->second] += rev.sign;
        resid[i] -= sign_par * ai.basis.signs[i];
        std::vector<std::pair<int, BigInt>> vec;
        for (const auto& [c, val] : resid)
          if (val != 0) vec.push_back({c, val});
        rc.checked++;
        if (!vec.empty() && !span.contains(vec)) rc.failures++;
      }
    }
  }
  return rc;
}

ResidualCheck one_leg_vanishing(int degree, const SpaceOptions& opt) {
  ResidualCheck rc;
  Assembled ai = assemble_space("AI", degree, opt);
  int n = static_cast<int>(ai.basis.diagrams.size());
  SpanOracle span(n);
  for (const auto& row : ai.rows) span.absorb(row_vector(ai.basis, row));
  for (int i = 0; i < n; i++) {
    if (ai.basis.diagrams[i].circle.size() != 1) continue;
    rc.checked++;
    if (!span.contains({{i, 1}})) rc.failures++;
  }
  return rc;
}

}  // namespace gda
