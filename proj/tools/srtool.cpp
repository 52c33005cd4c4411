// srtool: enumerate S-rings, reproduce the C_p^3 classification, decide the
// CI property and check the wreath-product criterion from the command line.
//
// Exit codes: 0 success, 2 usage, 3 undecided within bounds, 4 mismatch with
// the expected classification or criterion.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sring/catalog.hpp"
#include "sring/ci.hpp"
#include "sring/construct.hpp"
#include "sring/error.hpp"
#include "sring/expr.hpp"
#include "sring/morphisms.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sring;

namespace {

constexpr int kUsage = 2, kUndecided = 3, kMismatch = 4;

struct Bounds {
  unsigned max_order = 0;
  std::size_t node_budget = 0;
  double seconds = 0;
  std::size_t regular_bound = 2000000;
};

// Defaults from $SRTOOL_BOUNDS_DIR/bounds.json, if present.
Bounds default_bounds() {
  Bounds b;
  const char* dir = std::getenv("SRTOOL_BOUNDS_DIR");
  if (!dir) return b;
  std::ifstream in(fs::path(dir) / "bounds.json");
  if (!in) return b;
  json j = json::parse(in);
  b.max_order = j.value("max_order", b.max_order);
  b.node_budget = j.value("node_budget", b.node_budget);
  b.seconds = j.value("seconds", b.seconds);
  b.regular_bound = j.value("regular_bound", b.regular_bound);
  return b;
}

struct Common {
  std::uint64_t seed = 1;
  bool timings = false;
  bool verbose = false;
  unsigned jobs = 1;
  std::string out;
  Bounds bounds;
};

void add_bounds(CLI::App* c, Common& o) {
  c->add_option("--max-order", o.bounds.max_order, "largest group order to enumerate");
  c->add_option("--node-budget", o.bounds.node_budget, "closure budget (0 = unlimited)");
  c->add_option("--seconds", o.bounds.seconds, "wall-clock budget (0 = unlimited)");
}

EnumerateOptions enum_options(const Common& o) {
  EnumerateOptions e;
  e.max_order = o.bounds.max_order;
  e.node_budget = o.bounds.node_budget;
  e.seconds = o.bounds.seconds;
  if (o.verbose) e.log = [](const std::string& s) { std::cerr << s << "\n"; };
  return e;
}

// Report files live under the --out root; stdout gets the same lines when no
// root is given.
class Report {
 public:
  Report(const std::string& root, const std::string& name) {
    if (root.empty()) return;
    fs::create_directories(root);
    path_ = fs::path(root) / name;
    file_.open(path_);
    if (!file_) throw Error(ErrorKind::io_error, "cannot write " + path_.string());
  }
  void line(const json& j) {
    if (file_.is_open()) file_ << j.dump() << "\n";
    else std::cout << j.dump() << "\n";
  }
  std::string where() const { return path_.string(); }

 private:
  fs::path path_;
  std::ofstream file_;
};

json header(const std::string& command, const Common& o) {
  return json{{"command", command}, {"seed", o.seed}};
}

double since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

json sections_json(const SRing& a) {
  json arr = json::array();
  for (const auto& s : decompositions(a)) arr.push_back(s.to_string());
  return arr;
}

// ---------------------------------------------------------------- commands

int cmd_enumerate(const std::string& group, const std::string& filter, const std::string& method,
                  double interval, const Common& o) {
  const GroupSpec g = GroupSpec::parse(group);
  const Filter f = parse_filter(filter);
  EnumerateOptions e = enum_options(o);
  if (method == "split") e.method = EnumerationMethod::split_search;
  else if (method == "p-extension") e.method = EnumerationMethod::p_extension;
  if (!o.out.empty()) {
    if (fs::path(o.out).has_parent_path()) fs::create_directories(fs::path(o.out).parent_path());
    e.checkpoint_path = o.out + ".checkpoint";
    e.checkpoint_interval = interval;
  }
  const auto start = std::chrono::steady_clock::now();
  Catalog c = enumerate_srings(g, f, e);
  if (o.out.empty()) {
    save_catalog(c, std::cout);
  } else {
    std::ofstream out(o.out);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + o.out);
    save_catalog(c, out);
    std::error_code ec;
    fs::remove(e.checkpoint_path, ec);
    std::cerr << c.entries.size() << " classes over " << g.to_string() << " (" << to_string(f) << ") written to "
              << o.out << "\n";
  }
  if (o.timings) std::cerr << "seconds: " << since(start) << "\n";
  return 0;
}

int cmd_table1(int p, const Common& o) {
  if (p == 2) {
    std::cerr << "table1: p must be an odd prime\n";
    return kUsage;
  }
  const auto start = std::chrono::steady_clock::now();
  Table1Result r = table1(p, enum_options(o));
  Report rep(o.out, "table1-p" + std::to_string(p) + ".jsonl");
  json h = header("table1", o);
  h["p"] = p;
  h["classes"] = r.catalog.entries.size();
  rep.line(h);
  for (const auto& row : r.rows) {
    json j{{"row", row.row},
           {"label", row.label},
           {"template_rank", row.rank},
           {"expected_decomposable", row.decomposable},
           {"expected_thin_radical", row.thin_order}};
    if (row.entry) {
      const auto& e = r.catalog.entries[*row.entry];
      j["entry"] = e.id;
      j["rank"] = e.ring.rank();
      j["decomposable"] = e.decomposable;
      j["thin_radical"] = e.thin_order;
    } else {
      j["entry"] = nullptr;
    }
    rep.line(j);
  }
  // The p-S-rings over C_p^2 are the group ring and Z C_p wr Z C_p.
  rep.line(json{{"base_group", std::to_string(p) + "^2"}, {"base_classes", r.rank2_classes},
                {"note", "classes over C_p^2 are the group ring and ZC_p wr ZC_p"}});
  json tail{{"status", r.mismatches.empty() ? "match" : "mismatch"}, {"mismatches", r.mismatches}};
  if (o.timings) tail["seconds"] = since(start);
  rep.line(tail);
  std::cerr << "table1 p=" << p << ": " << r.catalog.entries.size() << " classes, "
            << (r.mismatches.empty() ? "match" : "MISMATCH") << "\n";
  for (const auto& m : r.mismatches) std::cerr << "  " << m << "\n";
  return r.mismatches.empty() ? 0 : kMismatch;
}

Catalog read_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot read " + path);
  return load_catalog(in);
}

CIOptions ci_options(const Common& o, const Catalog* own) {
  CIOptions c;
  c.regular_bound = o.bounds.regular_bound;
  if (own)
    c.catalog = [own](const GroupSpec& g, Filter f) -> const Catalog* {
      return g == own->group && (f == own->filter || own->filter == Filter::all) ? own : nullptr;
    };
  return c;
}

int cmd_ci(const std::string& path, const std::string& method, const Common& o) {
  Catalog c = read_catalog(path);
  CIOptions opts = ci_options(o, &c);
  if (method != "auto") {
    opts.fastpaths = false;
    opts.methods = {parse_ci_method(method)};
    if (opts.methods[0] == CIMethod::bruteforce && c.group.order() > opts.bruteforce_max_order)
      throw Error(ErrorKind::precondition_failed, "bruteforce needs |G| <= " + std::to_string(opts.bruteforce_max_order));
  }
  const std::size_t n = c.entries.size();
  std::vector<CIStatus> st(n);
  std::vector<double> secs(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    CIOracle oracle(opts);
    for (std::size_t i; (i = next++) < n;) {
      const auto start = std::chrono::steady_clock::now();
      st[i] = oracle.status(c.entries[i].ring);
      secs[i] = since(start);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < o.jobs; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Report rep(o.out, "ci-" + c.group.to_string() + ".jsonl");
  json h = header("ci", o);
  h["group"] = c.group.to_string();
  h["filter"] = to_string(c.filter);
  h["catalog_digest"] = c.digest();
  h["method"] = method;
  rep.line(h);
  std::size_t undecided = 0, not_ci = 0;
  for (std::size_t i = 0; i < n; ++i) {
    json j{{"id", c.entries[i].id},
           {"rank", c.entries[i].ring.rank()},
           {"verdict", to_string(st[i].verdict)},
           {"method", to_string(st[i].method)},
           {"detail", st[i].detail}};
    if (st[i].witness) j["witness"] = st[i].witness->images();
    if (st[i].witness_group) {
      json gens = json::array();
      for (const auto& p : st[i].witness_group->generators()) gens.push_back(p.images());
      j["witness_group"] = gens;
    }
    if (o.timings) j["seconds"] = secs[i];
    rep.line(j);
    undecided += st[i].verdict == CIVerdict::undecided;
    not_ci += st[i].verdict == CIVerdict::not_ci;
    c.entries[i].ci = to_string(st[i].verdict);
    c.entries[i].ci_method = to_string(st[i].method);
  }
  rep.line(json{{"entries", n}, {"not_ci", not_ci}, {"undecided", undecided}});
  if (!o.out.empty()) {
    std::ofstream out(fs::path(o.out) / ("catalog-" + c.group.to_string() + ".cat"));
    save_catalog(c, out);
  }
  std::cerr << "ci " << c.group.to_string() << ": " << n - not_ci - undecided << " CI, " << not_ci << " NotCI, "
            << undecided << " undecided\n";
  return undecided ? kUndecided : 0;
}

int cmd_theorem1(const std::string& group, const std::string& catalog_path, const Common& o) {
  const auto start = std::chrono::steady_clock::now();
  Catalog c;
  if (!catalog_path.empty()) {
    c = read_catalog(catalog_path);
    if (c.filter != Filter::all) throw Error(ErrorKind::precondition_failed, "theorem1 needs an 'all' catalog");
    if (!(c.group == GroupSpec::parse(group))) throw Error(ErrorKind::precondition_failed, "catalog is over another group");
  } else {
    const GroupSpec g = GroupSpec::parse(group);
    c = enumerate_srings(g, Filter::all, enum_options(o));
    annotate(c);
  }
  std::function<void(const std::string&)> log;
  if (o.verbose) log = [](const std::string& s) { std::cerr << s << "\n"; };
  CriterionReport r = verify_criterion(c, ci_options(o, nullptr), log, o.jobs);

  Report rep(o.out, "theorem1-" + c.group.to_string() + ".jsonl");
  json h = header("theorem1", o);
  h["group"] = c.group.to_string();
  h["catalog_digest"] = c.digest();
  h["entries"] = c.entries.size();
  rep.line(h);
  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    const auto& e = c.entries[i];
    json secs = json::array();
    for (const auto& rec : r.records)
      if (rec.entry == i)
        secs.push_back(json{{"section", rec.section.to_string()}, {"parts_ci", rec.parts_ci},
                            {"condition1", rec.parts_ci ? json(rec.condition) : json(nullptr)}});
    json j{{"id", e.id},
           {"rank", e.ring.rank()},
           {"decomposable_sections", secs},
           {"verdict", to_string(r.status[i].verdict)},
           {"method", to_string(r.status[i].method)}};
    if (o.timings) j["seconds"] = r.seconds[i];
    rep.line(j);
  }
  const bool holds = r.soundness_violations == 0 && r.undecided == 0 &&
                     (r.criterion_every_section || r.criterion_some_section);
  json tail{{"soundness_violations", r.soundness_violations},
            {"undecided", r.undecided},
            {"criterion_every_section", r.criterion_every_section},
            {"criterion_some_section", r.criterion_some_section},
            {"failures", r.failures},
            {"status", holds ? "criterion holds" : "criterion fails"}};
  if (o.timings) tail["seconds"] = since(start);
  rep.line(tail);
  std::cerr << "theorem1 " << c.group.to_string() << ": violations " << r.soundness_violations << ", every-section "
            << r.criterion_every_section << ", some-section " << r.criterion_some_section << ", undecided "
            << r.undecided << "\n";
  if (r.undecided) return kUndecided;
  return holds ? 0 : kMismatch;
}

// Randomized lifts: f = k phi with k in Aut(A), phi in Aut(G); the lift must
// pass post-verification.
int cmd_lift(const std::string& group, const std::string& filter, std::size_t instances, const Common& o) {
  const GroupSpec g = GroupSpec::parse(group);
  Catalog c = enumerate_srings(g, parse_filter(filter), enum_options(o));
  CIOracle parts;
  struct Case {
    std::size_t entry;
    Section s;
    PermGroup aut;
  };
  std::vector<Case> cases;
  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    const SRing& a = c.entries[i].ring;
    for (const auto& s : decompositions(a)) {
      if (parts.status(restriction(a, s.upper())).verdict != CIVerdict::ci) continue;
      if (parts.status(quotient(a, Section(Subgroup::whole(g), s.lower()))).verdict != CIVerdict::ci) continue;
      if (!condition1_holds(a, s)) continue;
      cases.push_back({i, s, scheme_aut(a)});
    }
  }
  Report rep(o.out, "lift-" + g.to_string() + ".jsonl");
  json h = header("lift", o);
  h["group"] = g.to_string();
  h["cases"] = cases.size();
  rep.line(h);
  if (cases.empty()) {
    rep.line(json{{"status", "no decomposable entries with the condition"}});
    return kMismatch;
  }
  std::mt19937_64 rng(o.seed);
  const PermGroup autg = aut_group(g);
  std::size_t passed = 0;
  for (std::size_t t = 0; t < instances; ++t) {
    const Case& k = cases[t % cases.size()];
    const SRing& a = c.entries[k.entry].ring;
    const GroupAut phi = GroupAut::from_perm(g, autg.random_element(rng));
    std::vector<ElementSet> cells;
    for (const auto& x : a.cells()) cells.push_back(phi.apply(x));
    const SRing b = SRing::from_cells(g, cells);
    const Perm f = k.aut.random_element(rng) * phi.to_perm();
    json j{{"instance", t}, {"entry", c.entries[k.entry].id}, {"section", k.s.to_string()}, {"f", f.images()}};
    try {
      const GroupAut alpha = lift_isomorphism(a, b, f, k.s);
      const bool ok = verify_lift(a, b, f, alpha);
      j["alpha"] = alpha.basis_images();
      j["verified"] = ok;
      passed += ok;
    } catch (const Error& e) {
      j["verified"] = false;
      j["error"] = e.what();
    }
    rep.line(j);
  }
  rep.line(json{{"instances", instances}, {"passed", passed}});
  std::cerr << "lift " << g.to_string() << ": " << passed << "/" << instances << " verified\n";
  return passed == instances ? 0 : kMismatch;
}

int cmd_build(const std::string& group, const std::string& expr) {
  const GroupSpec g = GroupSpec::parse(group);
  const SRing a = build_expr(expr, g);
  json cells = json::array();
  for (const auto& x : a.cells()) cells.push_back(x.elements());
  std::cout << json{{"group", g.to_string()},
                    {"expr", expr},
                    {"rank", a.rank()},
                    {"cells", cells},
                    {"thin_radical", thin_radical(a).order()},
                    {"decomposable_sections", sections_json(a)}}
                   .dump()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur rings over direct products of elementary abelian groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Common o;
  app.add_option("--seed", o.seed, "seed for randomized commands, recorded in every report");
  app.add_flag("--timings", o.timings, "include wall-clock timings in reports");
  app.add_flag("-v,--verbose", o.verbose, "progress on stderr");
  app.add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1u, 256u));

  std::string group, filter = "all", method = "auto", catalog, expr, enum_method = "auto";
  int p = 0;
  double interval = 30;
  std::size_t instances = 100;
  bool extended = false;

  auto* en = app.add_subcommand("enumerate", "enumerate S-rings up to Cayley isomorphism");
  en->add_option("--group", group, "group, e.g. 3^3 or 2^2x3")->required();
  en->add_option("--filter", filter, "all | p-srings")->check(CLI::IsMember({"all", "p-srings"}));
  en->add_option("--out", o.out, "catalog file");
  en->add_option("--method", enum_method, "auto | split | p-extension")
      ->check(CLI::IsMember({"auto", "split", "p-extension"}));
  en->add_option("--checkpoint-interval", interval, "seconds between checkpoints");
  add_bounds(en, o);

  auto* t1 = app.add_subcommand("table1", "classify p-S-rings over C_p^3 and match the six templates");
  t1->add_option("--p", p, "odd prime, 3 or 5")->required();
  t1->add_option("--out", o.out, "report directory");
  add_bounds(t1, o);

  auto* ci = app.add_subcommand("ci", "decide the CI property for every catalog entry");
  ci->add_option("--catalog", catalog, "catalog file")->required();
  ci->add_option("--method", method, "auto | bruteforce | regular-subgroups | cayley-realization")
      ->check(CLI::IsMember({"auto", "bruteforce", "regular-subgroups", "cayley-realization"}));
  ci->add_option("--out", o.out, "report directory");
  ci->add_option("--regular-bound", o.bounds.regular_bound, "largest |Aut(A)| for the regular-subgroup method");

  auto* th = app.add_subcommand("theorem1", "compare the wreath condition with the CI property");
  th->add_option("--group", group, "group")->required();
  th->add_option("--catalog", catalog, "existing 'all' catalog of the group");
  th->add_option("--out", o.out, "report directory");
  th->add_option("--regular-bound", o.bounds.regular_bound, "largest |Aut(A)| for the regular-subgroup method");
  th->add_flag("--extended", extended, "allow groups of order above 18 (C3^3 takes minutes)");
  add_bounds(th, o);

  auto* li = app.add_subcommand("lift", "lift random isomorphisms to Cayley isomorphisms and verify them");
  li->add_option("--group", group, "group")->required();
  li->add_option("--filter", filter, "all | p-srings")->check(CLI::IsMember({"all", "p-srings"}));
  li->add_option("--instances", instances, "number of instances");
  li->add_option("--out", o.out, "report directory");

  auto* bu = app.add_subcommand("build", "build an S-ring from a constructor expression");
  bu->add_option("--group", group, "group")->required();
  bu->add_option("--expr", expr, "constructor expression")->required();

  try {
    o.bounds = default_bounds();
  } catch (const std::exception& e) {
    std::cerr << "bad bounds file: " << e.what() << "\n";
    return kUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*en) return cmd_enumerate(group, filter, enum_method, interval, o);
    if (*t1) return cmd_table1(p, o);
    if (*ci) return cmd_ci(catalog, method, o);
    if (*th) {
      const GroupSpec g = GroupSpec::parse(group);
      if (g.order() > 18 && !extended) {
        std::cerr << "theorem1: groups of order above 18 need --extended\n";
        return kUsage;
      }
      return cmd_theorem1(group, catalog, o);
    }
    if (*li) return cmd_lift(group, filter, instances, o);
    if (*bu) return cmd_build(group, expr);
  } catch (const ResourceLimit& e) {
    std::cerr << "undecided within bounds: " << e.what() << "\n";
    return kUndecided;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::invalid_group:
      case ErrorKind::parse_error:
      case ErrorKind::precondition_failed:
      case ErrorKind::io_error:
        return kUsage;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}
