// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "properties.hpp"
#include "sring/catalog.hpp"
#include "sring/ci.hpp"
#include "sring/construct.hpp"
#include "sring/error.hpp"
#include "sring/expr.hpp"
#include "sring/morphisms.hpp"

using namespace sring;
using Clock = std::chrono::steady_clock;

namespace {

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Result {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string& name, const std::function<Result()>& body) {
  const auto t0 = Clock::now();
  Result r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  std::ostringstream line;
  line << (r.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << name << "): " << r.detail << " ["
       << static_cast<long>(since(t0) * 1000) / 1000.0 << " s]";
  std::cout << line.str() << std::endl;
  failures += !r.pass;
}

// Table 1 at p = 3 against the expected flags and thin radical orders.
Result table1_p3() {
  const auto t0 = Clock::now();
  const auto t = table1(3);
  const std::vector<bool> dec{false, true, true, true, true, false};
  const std::vector<unsigned> thin{27, 9, 3, 9, 3, 3};
  std::ostringstream d;
  bool ok = t.catalog.entries.size() == 6 && t.rows.size() == 6 && t.mismatches.empty();
  std::vector<std::size_t> used;
  for (std::size_t i = 0; ok && i < 6; ++i) {
    const auto& row = t.rows[i];
    if (!row.entry) {
      ok = false;
      break;
    }
    const auto& e = t.catalog.entries[*row.entry];
    ok = ok && e.decomposable == dec[i] && e.thin_order == thin[i] && cayley_isomorphic(e.ring, build_expr(row.label, t.catalog.group));
    used.push_back(*row.entry);
  }
  std::sort(used.begin(), used.end());
  ok = ok && std::unique(used.begin(), used.end()) == used.end();
  const double secs = since(t0);
  d << t.catalog.entries.size() << " classes, " << t.mismatches.size() << " mismatches, ranks";
  for (const auto& row : t.rows) d << ' ' << row.rank;
  d << ", " << secs << " s of 600";
  return {ok && secs <= 600, d.str()};
}

Result row6_automorphisms() {
  const auto a = table1_templates(3).at(5).second;
  const auto k = scheme_aut(a);
  const auto ke = k.stabilizer(0);
  std::ostringstream d;
  d << "|Aut(A)| = " << k.order() << ", |Aut(A)_e| = " << ke.order();
  return {k.order() == 81 && ke.order() == 3, d.str()};
}

Result minimality() {
  const auto g = GroupSpec::parse("3^3");
  const auto rows = table1_templates(3);
  const auto r3 = rows.at(2).second, r5 = rows.at(4).second, r6 = rows.at(5).second;
  const auto wr = build_expr("wr(Z,Z;U=<100,010>;L=<100>)", g);
  const auto a5 = cayley_auts(r5).order(), a3 = cayley_auts(r3).order();
  // Independent count of Aut_G(A) by scanning Aut(G).
  const auto n5 = oracle::cayley_aut_order(r5), n3 = oracle::cayley_aut_order(r3);
  const auto m5 = is_cayley_minimal(r5), m3 = is_cayley_minimal(r3);
  const auto z2 = is_2_minimal(group_ring(g)), r62 = is_2_minimal(r6), wr2 = is_2_minimal(wr);
  std::ostringstream d;
  d << "row 5: |Aut_G| = " << a5 << " (scan " << n5 << "), Cayley minimal " << (m5 ? (*m5 ? "yes" : "no") : "?")
    << "; row 3: |Aut_G| = " << a3 << " (scan " << n3 << "), Cayley minimal " << (m3 ? (*m3 ? "yes" : "no") : "?")
    << "; 2-minimal: ZG " << (z2 == true) << ", row 6 " << (r62 == true) << ", ZU wr Z(G/L) " << (wr2 == true);
  const bool ok = a5 == 27 && n5 == 27 && m5 == false && a3 == 9 && n3 == 9 && m3 == true && z2 == true &&
                  r62 == true && wr2 == false;
  return {ok, d.str()};
}

Result criterion(const char* group, double budget) {
  const auto t0 = Clock::now();
  const auto g = GroupSpec::parse(group);
  const auto cat = enumerate_srings(g, Filter::all);
  CIOptions opts;
  opts.catalog = [&](const GroupSpec& h, Filter) -> const Catalog* { return h == g ? &cat : nullptr; };
  const auto r = verify_criterion(cat, opts);
  const double secs = since(t0);
  std::ostringstream d;
  d << group << ": " << cat.entries.size() << " S-rings, " << r.records.size() << " decomposable records, soundness violations "
    << r.soundness_violations << ", undecided " << r.undecided << ", CI => (1) every section "
    << (r.criterion_every_section ? "yes" : "no") << ", some section " << (r.criterion_some_section ? "yes" : "no") << ", "
    << secs << " s of " << budget;
  const bool ok = r.soundness_violations == 0 && r.undecided == 0 &&
                  (r.criterion_every_section || r.criterion_some_section) && secs <= budget;
  return {ok, d.str()};
}

Result oracle_equivalence() {
  const auto cat = enumerate_srings(GroupSpec::parse("2^3"), Filter::all);
  std::size_t agree = 0;
  for (const auto& e : cat.entries) {
    const auto rs = is_ci(e.ring, CIOptions{.fastpaths = false, .methods = {CIMethod::regular_subgroups}});
    const auto bf = is_ci_bruteforce(e.ring);
    agree += rs.verdict == bf.verdict && rs.verdict != CIVerdict::undecided;
  }
  std::ostringstream d;
  d << agree << "/" << cat.entries.size() << " S-rings over C2^3 agree";
  return {agree == cat.entries.size() && agree > 0, d.str()};
}

Result property_suites() {
  std::vector<Catalog> cats;
  for (const char* s : {"2^2", "2x3", "2^3", "3^2", "2^2x3", "2^4", "5^2"})
    cats.push_back(enumerate_srings(GroupSpec::parse(s), Filter::all));
  cats.push_back(enumerate_srings(GroupSpec::parse("3^3"), Filter::p_srings));
  struct Suite {
    const char* name;
    std::function<props::Tally(const Catalog&)> check;
    unsigned max_order;
  };
  const std::vector<Suite> suites{
      {"multipliers", props::multipliers, 128},
      {"big-cell wreath", props::big_cell_wreath, 128},
      {"index-p cells", props::index_p_cells, 128},
      {"tensor forcing", props::tensor_forcing, 128},
      {"wreath preservation", [](const Catalog& c) { return props::wreath_preservation(c); }, 27},
      {"thin radical of index p", props::thin_index_p, 128},
      {"cyclotomic quotients", props::quotient_cyclotomic, 128},
      {"schurian quotients", [](const Catalog& c) { return props::quotient_schurian(c); }, 16},
  };
  std::ostringstream d;
  bool ok = true;
  for (const auto& s : suites) {
    std::size_t checked = 0, bad = 0;
    for (const auto& c : cats) {
      if (c.group.order() > s.max_order) continue;
      const auto t = s.check(c);
      checked += t.checked;
      bad += t.violations.size();
      for (const auto& v : t.violations) std::cerr << s.name << ": " << v << "\n";
    }
    d << s.name << " " << checked << "/" << bad << "; ";
    ok = ok && checked > 0 && bad == 0;
  }
  return {ok, d.str() + "(checked/violations)"};
}

// Independent verification of a lift: alpha is an automorphism of G carrying
// every cell of a onto a cell of b, and onto the cell f induces.
bool lift_ok(const SRing& a, const SRing& b, const Perm& f, const GroupAut& alpha) {
  const auto& g = a.group();
  const unsigned n = g.order();
  std::vector<bool> hit(n);
  for (Elem x = 0; x < n; ++x) {
    if (hit[alpha(x)]) return false;
    hit[alpha(x)] = true;
    for (Elem y = 0; y < n; ++y)
      if (alpha(g.add(x, y)) != g.add(alpha(x), alpha(y))) return false;
  }
  for (const auto& c : a.cells()) {
    const Elem x = c.min();
    const auto& target = b.cell(b.cell_of(g.sub(f(x), f(0))));
    if (!(alpha.apply(c) == target)) return false;
  }
  return true;
}

// f is a colour-preserving bijection from a to b.
bool is_iso(const SRing& a, const SRing& b, const Perm& f) {
  const auto& g = a.group();
  std::vector<int> to(a.rank(), -1);
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y) {
      const unsigned ca = a.cell_of(g.sub(y, x)), cb = b.cell_of(g.sub(f(y), f(x)));
      if (to[ca] == -1) to[ca] = static_cast<int>(cb);
      if (to[ca] != static_cast<int>(cb)) return false;
    }
  return true;
}

Result constructive_lift() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t total = 0, passed = 0, invalid = 0;
  std::ostringstream d;
  for (auto [group, filter] : {std::pair{"3^3", Filter::p_srings}, std::pair{"2^4", Filter::all}}) {
    const auto g = GroupSpec::parse(group);
    const auto cat = enumerate_srings(g, filter);
    CIOracle parts;
    struct Case {
      const SRing* a;
      Section s;
      PermGroup aut;
    };
    std::vector<Case> cases;
    for (const auto& e : cat.entries)
      for (const auto& s : decompositions(e.ring)) {
        if (parts.status(restriction(e.ring, s.upper())).verdict != CIVerdict::ci) continue;
        if (parts.status(quotient(e.ring, Section(Subgroup::whole(g), s.lower()))).verdict != CIVerdict::ci) continue;
        if (!condition1_holds(e.ring, s)) continue;
        cases.push_back({&e.ring, s, scheme_aut(e.ring)});
      }
    const auto autg = aut_group(g);
    std::size_t here = 0;
    for (int i = 0; i < 60 && !cases.empty(); ++i) {
      const auto& k = cases[rng() % cases.size()];
      const auto phi = GroupAut::from_perm(g, autg.random_element(rng));
      std::vector<ElementSet> cells;
      for (const auto& c : k.a->cells()) cells.push_back(phi.apply(c));
      const auto b = SRing::from_cells(g, cells);
      const Perm f = k.aut.random_element(rng) * phi.to_perm();
      if (!is_iso(*k.a, b, f)) {
        ++invalid;
        continue;
      }
      ++total;
      ++here;
      try {
        passed += lift_ok(*k.a, b, f, lift_isomorphism(*k.a, b, f, k.s));
      } catch (const Error& e) {
        std::cerr << "lift failed: " << e.what() << "\n";
      }
    }
    d << group << " " << here << " instances from " << cases.size() << " (entry, section) pairs; ";
  }
  const double secs = since(t0);
  d << passed << "/" << total << " verified, " << secs << " s of 600";
  return {total >= 100 && passed == total && invalid == 0 && secs <= 600, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  bool extended = false;
  app.add_flag("--extended", extended, "also verify the criterion over C3^3 and C2 x C3^2");
  CLI11_PARSE(app, argc, argv);

  report(1, "Table 1 at p = 3", table1_p3);
  report(2, "automorphisms of row 6", row6_automorphisms);
  report(3, "minimality at p = 3", minimality);
  report(4, "criterion over C2^3", [] { return criterion("2^3", 1800); });
  report(4, "criterion over C2^2 x C3", [] { return criterion("2^2x3", 1800); });
  if (extended) {
    report(4, "criterion over C3^3", [] { return criterion("3^3", 4 * 3600); });
    report(4, "criterion over C2 x C3^2", [] { return criterion("2x3^2", 4 * 3600); });
  } else {
    std::cout << "N/A  criterion 4 (C3^3, C2 x C3^2): needs --extended" << std::endl;
  }
  report(5, "regular subgroups vs brute force", oracle_equivalence);
  report(6, "property suites", property_suites);
  report(7, "constructive lift", constructive_lift);
  std::cout << "N/A  criterion 8: DCI sweeps over C_p^4 and C_p^5, rank 5-6 verification and C_3^n (n >= 4) "
               "enumeration are outside the desk-scale scope"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
