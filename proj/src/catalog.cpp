#include "sring/catalog.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "sring/construct.hpp"
#include "sring/error.hpp"
#include "sring/expr.hpp"
#include "sring/morphisms.hpp"

namespace sring {

const char* to_string(Filter f) { return f == Filter::all ? "all" : "p-srings"; }

Filter parse_filter(const std::string& s) {
  if (s == "all") return Filter::all;
  if (s == "p-srings") return Filter::p_srings;
  throw Error(ErrorKind::parse_error, "unknown filter '" + s + "' (expected all or p-srings)");
}

namespace {

using Clock = std::chrono::steady_clock;

struct VecHash {
  template <class T>
  std::size_t operator()(const std::vector<T>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
    return h;
  }
};

class Budget {
 public:
  explicit Budget(const EnumerateOptions& o) : opts_(o), start_(Clock::now()) {}
  void tick() {
    ++closures_;
    if (opts_.node_budget && closures_ > opts_.node_budget)
      throw ResourceLimit("enumeration node budget " + std::to_string(opts_.node_budget));
    if (opts_.seconds > 0 && (closures_ & 63) == 0 && elapsed() > opts_.seconds)
      throw ResourceLimit("enumeration time budget " + std::to_string(opts_.seconds) + "s");
  }
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
  std::size_t closures() const { return closures_; }

 private:
  const EnumerateOptions& opts_;
  Clock::time_point start_;
  std::size_t closures_ = 0;
};

ElementSet image(const Perm& h, const ElementSet& s) {
  ElementSet out;
  s.for_each([&](unsigned x) { out.insert(h(x)); });
  return out;
}

// X is the lexicographically greatest set in its orbit (element 0 most significant).
bool is_canonical(const ElementSet& x, const std::vector<Perm>& sym) {
  for (const auto& h : sym) {
    ElementSet d = image(h, x) ^ x;
    if (!d.empty() && !x.contains(d.min())) return false;
  }
  return true;
}

std::vector<long> multipliers(const GroupSpec& g) {
  long e = 1;
  for (const auto& f : g.factors()) e *= f.prime;
  std::vector<long> out;
  for (long m = 2; m < e; ++m)
    if (std::gcd(m, e) == 1) out.push_back(m);
  return out;
}

ElementSet power(const GroupSpec& g, const ElementSet& x, long m) {
  ElementSet out;
  x.for_each([&](unsigned y) { out.insert(g.mul(m, y)); });
  return out;
}

bool is_power_of(unsigned n, unsigned p) {
  while (n > 1 && n % p == 0) n /= p;
  return n == 1;
}

// Orderly generation of the subsets X of a cell with |X| <= max_size, one per
// orbit of sym. `grow_ok` prunes monotonically, `emit_ok` filters emitted sets.
template <class GrowOk, class EmitOk, class F>
void for_each_split(const ElementSet& cell, const std::vector<Perm>& sym, unsigned max_size, GrowOk grow_ok,
                    EmitOk emit_ok, F&& f) {
  const auto elems = cell.elements();
  auto rec = [&](auto&& self, const ElementSet& x, std::size_t next) -> void {
    if (x.size() >= max_size) return;
    for (std::size_t i = next; i < elems.size(); ++i) {
      ElementSet y = x;
      y.insert(elems[i]);
      if (!grow_ok(y) || !is_canonical(y, sym)) continue;
      if (emit_ok(y)) f(y);
      self(self, y, i + 1);
    }
  };
  rec(rec, ElementSet(), 0);
}

SRing split_closure(const SRing& a, unsigned cell, const ElementSet& x) {
  std::vector<int> labels(a.order());
  for (Elem g = 0; g < a.order(); ++g) labels[g] = static_cast<int>(a.cell_of(g));
  x.for_each([&](unsigned g) { labels[g] = static_cast<int>(a.rank()); });
  (void)cell;
  return schur_closure(a.group(), labels);
}

std::vector<Perm> symmetry(const SRing& a, const EnumerateOptions& opts) {
  PermGroup h = cayley_auts(a);
  if (h.order() > opts.symmetry_limit) return {Perm(a.order())};
  return h.elements(opts.symmetry_limit);
}

void log(const EnumerateOptions& o, const std::string& s) {
  if (o.log) o.log(s);
}

// ---------------------------------------------------------------- split search

void save_checkpoint(const std::string& path, const GroupSpec& g, Filter f, const std::vector<SRing>& reps,
                     std::size_t processed) {
  nlohmann::json j;
  j["group"] = g.to_string();
  j["filter"] = to_string(f);
  j["processed"] = processed;
  auto& arr = j["reps"] = nlohmann::json::array();
  for (const auto& r : reps) arr.push_back(std::vector<int>(r.cell_index().begin(), r.cell_index().end()));
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorKind::io_error, "cannot write checkpoint " + tmp);
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

std::vector<SRing> split_search(const GroupSpec& g, Filter filter, const EnumerateOptions& opts, Budget& budget) {
  std::vector<SRing> reps;
  std::unordered_set<std::vector<std::uint8_t>, VecHash> seen;
  std::size_t processed = 0;
  if (!opts.checkpoint_path.empty() && std::filesystem::exists(opts.checkpoint_path)) {
    std::ifstream in(opts.checkpoint_path);
    auto j = nlohmann::json::parse(in);
    if (j.at("group") != g.to_string() || j.at("filter") != to_string(filter))
      throw Error(ErrorKind::io_error, "checkpoint " + opts.checkpoint_path + " belongs to another run");
    for (const auto& r : j.at("reps")) {
      reps.push_back(SRing::from_labels(g, r.get<std::vector<int>>()));
      seen.insert(canonical_form(reps.back()));
    }
    processed = j.at("processed").get<std::size_t>();
    log(opts, "resumed from checkpoint: " + std::to_string(reps.size()) + " classes, " + std::to_string(processed) + " expanded");
  } else {
    reps.push_back(trivial_sring(g));
    seen.insert(canonical_form(reps[0]));
  }
  const bool p_filter = filter == Filter::p_srings;
  const unsigned p = g.factors().empty() ? 1 : g.factors()[0].prime;
  const auto mults = multipliers(g);
  auto last_save = Clock::now();
  for (; processed < reps.size(); ++processed) {
    const SRing a = reps[processed];
    const auto sym = symmetry(a, opts);
    std::unordered_set<std::vector<std::uint16_t>, VecHash> tried;
    for (unsigned c = 0; c < a.rank(); ++c) {
      const ElementSet& y = a.cell(c);
      if (y.size() < 2 || a.inverse_cell(c) < c) continue;
      auto grow_ok = [&](const ElementSet& x) {
        if (!p_filter || p == 2) return true;
        for (long m : mults)
          if (power(g, x, m).intersects(x)) return false;
        return true;
      };
      auto emit_ok = [&](const ElementSet& x) {
        if (p_filter && !is_power_of(x.size(), p)) return false;
        for (long m : mults) {
          ElementSet xm = power(g, x, m);
          if (xm.intersects(x) && !(xm == x)) return false;
        }
        return true;
      };
      for_each_split(y, sym, y.size() / 2, grow_ok, emit_ok, [&](const ElementSet& x) {
        budget.tick();
        SRing child = split_closure(a, c, x);
        if (!tried.insert(child.cell_index()).second) return;
        if (seen.insert(canonical_form(child)).second) reps.push_back(child);
      });
    }
    if (!opts.checkpoint_path.empty() &&
        std::chrono::duration<double>(Clock::now() - last_save).count() > opts.checkpoint_interval) {
      save_checkpoint(opts.checkpoint_path, g, filter, reps, processed + 1);
      last_save = Clock::now();
    }
  }
  if (!opts.checkpoint_path.empty()) save_checkpoint(opts.checkpoint_path, g, filter, reps, processed);
  if (p_filter) {
    std::vector<SRing> out;
    for (auto& r : reps)
      if (r.is_p_sring()) out.push_back(r);
    return out;
  }
  return reps;
}

// ---------------------------------------------------------------- p-extension

// Every p-S-ring over an elementary abelian p-group has an A-subgroup H of
// index p; cells outside H lie in H-cosets and the multipliers move the cells
// of H + g to those of H + mg, so B is fixed by B_H and the cells in H + g.
std::vector<SRing> p_extension(const GroupSpec& g, const EnumerateOptions& opts, Budget& budget) {
  const int n = g.num_coords();
  const unsigned p = g.factors()[0].prime;
  if (n == 1) return {group_ring(g)};
  const GroupSpec hspec = GroupSpec::make({{static_cast<int>(p), n - 1}});
  const auto lower = p_extension(hspec, opts, budget);
  const Elem hsize = g.prefix(n - 1);
  const ElementSet coset1 = ElementSet::range(hsize, 2 * hsize);
  std::vector<SRing> out;
  std::unordered_set<std::vector<std::uint8_t>, VecHash> seen;
  for (const auto& c : lower) {
    auto restricts_to_c = [&](const SRing& a) {
      for (Elem x = 0; x < hsize; ++x)
        if (!(a.cell(a.cell_of(x)) == c.cell(c.cell_of(x)))) return false;
      return true;
    };
    std::vector<int> labels(g.order());
    for (Elem x = 0; x < g.order(); ++x)
      labels[x] = x < hsize ? static_cast<int>(c.cell_of(x)) : static_cast<int>(c.rank() + x / hsize);
    budget.tick();
    SRing b0 = schur_closure(g, labels);
    if (!restricts_to_c(b0)) continue;
    std::vector<SRing> nodes{b0};
    std::unordered_set<std::vector<std::uint16_t>, VecHash> node_seen{b0.cell_index()};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const SRing a = nodes[i];
      if (a.is_p_sring() && seen.insert(canonical_form(a)).second) out.push_back(a);
      const auto sym = symmetry(a, opts);
      for (unsigned ci = 0; ci < a.rank(); ++ci) {
        const ElementSet& y = a.cell(ci);
        if (!y.subset_of(coset1) || y.size() < 2) continue;
        auto grow_ok = [](const ElementSet&) { return true; };
        auto emit_ok = [&](const ElementSet& x) { return is_power_of(x.size(), p); };
        for_each_split(y, sym, y.size() / 2, grow_ok, emit_ok, [&](const ElementSet& x) {
          budget.tick();
          SRing child = split_closure(a, ci, x);
          if (!restricts_to_c(child)) return;
          if (node_seen.insert(child.cell_index()).second) nodes.push_back(child);
        });
      }
    }
  }
  log(opts, "p-S-rings over " + g.to_string() + ": " + std::to_string(out.size()));
  return out;
}

}  // namespace

Catalog enumerate_srings(const GroupSpec& g, Filter filter, const EnumerateOptions& opts) {
  const unsigned bound = opts.max_order ? opts.max_order : (filter == Filter::all ? 27u : 81u);
  if (g.order() > bound)
    throw ResourceLimit("group order " + std::to_string(g.order()) + " exceeds the enumeration bound " + std::to_string(bound));
  if (filter == Filter::p_srings && !g.is_p_group() && g.order() > 1)
    throw Error(ErrorKind::precondition_failed, "p-S-rings need a p-group");
  Budget budget(opts);
  std::vector<SRing> rings;
  if (g.order() == 1) {
    rings.push_back(SRing::from_cells(g, {ElementSet::range(0, 1)}));
  } else {
    EnumerationMethod m = opts.method;
    if (m == EnumerationMethod::automatic) m = filter == Filter::p_srings ? EnumerationMethod::p_extension : EnumerationMethod::split_search;
    if (m == EnumerationMethod::p_extension) {
      if (filter != Filter::p_srings) throw Error(ErrorKind::precondition_failed, "p-extension enumerates p-S-rings only");
      rings = p_extension(g, opts, budget);
    } else {
      rings = split_search(g, filter, opts, budget);
    }
  }
  Catalog cat{g, filter, 1, {}};
  for (auto& r : rings) {
    CatalogEntry e;
    e.canon = canonical_form(r);
    e.ring = SRing::from_labels(g, std::vector<int>(e.canon.begin(), e.canon.end()));
    cat.entries.push_back(std::move(e));
  }
  std::sort(cat.entries.begin(), cat.entries.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    if (a.ring.rank() != b.ring.rank()) return a.ring.rank() < b.ring.rank();
    return a.canon < b.canon;
  });
  annotate(cat);
  log(opts, "enumerated " + std::to_string(cat.entries.size()) + " classes over " + g.to_string() + " with " +
                std::to_string(budget.closures()) + " closures");
  return cat;
}

void annotate(Catalog& c) {
  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    auto& e = c.entries[i];
    e.id = static_cast<unsigned>(i);
    if (e.canon.empty()) e.canon = canonical_form(e.ring);
    e.decomposable = is_decomposable(e.ring);
    e.thin_order = thin_radical(e.ring).order();
  }
}

std::optional<std::size_t> Catalog::find(const SRing& a) const {
  if (!(a.group() == group)) return std::nullopt;
  auto f = canonical_form(a);
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].canon == f) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------- persistence

namespace {

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::string entry_line(const CatalogEntry& e) {
  nlohmann::json j;
  auto& cells = j["cells"] = nlohmann::json::array();
  for (const auto& c : e.ring.cells()) cells.push_back(c.elements());
  j["ci"] = e.ci;
  j["ci_method"] = e.ci_method;
  j["decomposable"] = e.decomposable;
  j["id"] = e.id;
  j["label"] = e.label;
  j["rank"] = e.ring.rank();
  j["thin_radical"] = e.thin_order;
  return j.dump();
}

std::string Catalog::digest() const {
  std::string all;
  for (const auto& e : entries) all += entry_line(e) + '\n';
  return fnv_hex(all);
}

void save_catalog(const Catalog& c, std::ostream& out) {
  nlohmann::json h;
  h["count"] = c.entries.size();
  h["digest"] = c.digest();
  h["filter"] = to_string(c.filter);
  h["format"] = "srtool-catalog";
  h["group"] = c.group.to_string();
  h["version"] = c.version;
  out << h.dump() << '\n';
  for (const auto& e : c.entries) out << entry_line(e) << '\n';
}

Catalog load_catalog(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::io_error, "empty catalog");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::io_error, std::string("bad catalog header: ") + e.what());
  }
  if (h.value("format", "") != "srtool-catalog") throw Error(ErrorKind::io_error, "not a catalog file");
  Catalog c;
  c.group = GroupSpec::parse(h.at("group").get<std::string>());
  c.filter = parse_filter(h.at("filter").get<std::string>());
  c.version = h.at("version").get<int>();
  if (c.version != Catalog{}.version)
    throw Error(ErrorKind::io_error, "unsupported catalog version " + std::to_string(c.version));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
      throw Error(ErrorKind::io_error, std::string("bad catalog entry: ") + e.what());
    }
    std::vector<ElementSet> cells;
    for (const auto& cell : j.at("cells")) cells.push_back(ElementSet::of(cell.get<std::vector<Elem>>()));
    CatalogEntry e;
    e.ring = SRing::from_cells(c.group, cells);
    e.id = j.at("id").get<unsigned>();
    e.label = j.at("label").get<std::string>();
    e.decomposable = j.at("decomposable").get<bool>();
    e.thin_order = j.at("thin_radical").get<unsigned>();
    e.ci = j.value("ci", "");
    e.ci_method = j.value("ci_method", "");
    e.canon = canonical_form(e.ring);
    c.entries.push_back(std::move(e));
  }
  if (c.entries.size() != h.at("count").get<std::size_t>()) throw Error(ErrorKind::io_error, "entry count mismatch");
  if (c.digest() != h.at("digest").get<std::string>()) throw Error(ErrorKind::io_error, "catalog digest mismatch");
  return c;
}

// ---------------------------------------------------------------- table 1

std::vector<std::pair<std::string, SRing>> table1_templates(int p) {
  const GroupSpec g = GroupSpec::make({{p, 3}});
  const std::string pp = std::to_string(p);
  const std::vector<std::string> exprs = {
      "Z",
      "wr(Z,Z;U=<100,010>;L=<100,010>)",
      "wr(Z,Z;U=<100>;L=<100>)",
      "tensor(wr(Z,Z;U=<10>;L=<10>)@" + pp + "^2,Z@" + pp + ")",
      "wr(wr(Z,Z;U=<10>;L=<10>),Z;U=<100,010>;L=<100,010>)",
      "cyc([110/011/001])",
  };
  std::vector<std::pair<std::string, SRing>> out;
  for (const auto& e : exprs) out.emplace_back(e, build_expr(e, g));
  return out;
}

Table1Result table1(int p, const EnumerateOptions& opts) {
  if (p == 2) throw Error(ErrorKind::precondition_failed, "the classification is stated for odd p");
  if (p != 3 && p != 5) throw Error(ErrorKind::precondition_failed, "p must be 3 or 5 (p^3 <= 128)");
  const GroupSpec g = GroupSpec::make({{p, 3}});
  EnumerateOptions o = opts;
  if (o.max_order < g.order()) o.max_order = g.order();
  Table1Result res{p, enumerate_srings(g, Filter::p_srings, o), {}, {}, {}};
  const unsigned p1 = p, p2 = p1 * p1, p3 = p2 * p1;
  const bool dec[] = {false, true, true, true, true, false};
  const unsigned thin[] = {p3, p2, p1, p2, p1, p1};
  auto templates = table1_templates(p);
  std::set<std::size_t> matched;
  for (std::size_t i = 0; i < templates.size(); ++i) {
    Table1Row row{static_cast<int>(i + 1), templates[i].first, dec[i], thin[i], res.catalog.find(templates[i].second),
                  templates[i].second.rank()};
    const std::string tag = "row " + std::to_string(i + 1);
    if (!row.entry) {
      res.mismatches.push_back(tag + ": no catalog class matches " + row.label);
    } else {
      const auto& e = res.catalog.entries[*row.entry];
      if (!matched.insert(*row.entry).second) res.mismatches.push_back(tag + ": class matched twice");
      if (e.decomposable != row.decomposable) res.mismatches.push_back(tag + ": decomposability differs");
      if (e.thin_order != row.thin_order) res.mismatches.push_back(tag + ": thin radical order differs");
      res.catalog.entries[*row.entry].label = row.label;
    }
    res.rows.push_back(row);
  }
  if (res.catalog.entries.size() != 6)
    res.mismatches.push_back("expected 6 classes, found " + std::to_string(res.catalog.entries.size()));
  // Recursion base: p-S-rings over C_p^2.
  const GroupSpec g2 = GroupSpec::make({{p, 2}});
  Catalog c2 = enumerate_srings(g2, Filter::p_srings, o);
  const std::vector<std::string> names = {"Z", "wr(Z,Z;U=<10>;L=<10>)"};
  for (const auto& e : c2.entries) {
    std::string name = "rank " + std::to_string(e.ring.rank());
    for (const auto& nm : names)
      if (canonical_form(build_expr(nm, g2)) == e.canon) name = nm;
    res.rank2_classes.push_back(name);
  }
  return res;
}

}  // namespace sring
