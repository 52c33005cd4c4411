#include "sring/morphisms.hpp"

#include <algorithm>
#include <numeric>

#include "sring/basis_search.hpp"
#include "sring/error.hpp"

namespace sring {

ElementSet AlgebraicIso::image(const ElementSet& s) const {
  ElementSet out;
  s.for_each([&](unsigned x) {
    unsigned c = source.cell_of(x);
    if (!source.cell(c).subset_of(s)) throw Error(ErrorKind::precondition_failed, "set is not a union of cells");
    out |= target.cell(map[c]);
  });
  return out;
}

AlgebraicIso AlgebraicIso::inverse() const {
  AlgebraicIso r{target, source, std::vector<unsigned>(map.size())};
  for (unsigned i = 0; i < map.size(); ++i) r.map[map[i]] = i;
  return r;
}

AlgebraicIso induced_algebraic_iso(const SRing& a, const SRing& b, const Perm& f) {
  const GroupSpec& g = a.group();
  if (!(g == b.group())) throw Error(ErrorKind::group_mismatch, "isomorphism between different groups");
  if (f.degree() != g.order()) throw Error(ErrorKind::precondition_failed, "permutation degree");
  std::vector<int> map(a.rank(), -1);
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y) {
      unsigned ca = a.cell_of(g.sub(y, x)), cb = b.cell_of(g.sub(f(y), f(x)));
      if (map[ca] < 0) map[ca] = static_cast<int>(cb);
      else if (map[ca] != static_cast<int>(cb))
        throw Error(ErrorKind::precondition_failed, "permutation is not an isomorphism of the S-rings");
    }
  AlgebraicIso phi{a, b, {}};
  std::vector<bool> hit(b.rank());
  for (int m : map) {
    if (hit[m]) throw Error(ErrorKind::precondition_failed, "induced cell map is not injective");
    hit[m] = true;
    phi.map.push_back(static_cast<unsigned>(m));
  }
  if (a.rank() != b.rank()) throw Error(ErrorKind::precondition_failed, "ranks differ");
  return phi;
}

// ---------------------------------------------------------------- Cayley isomorphisms

namespace {

// Keeps a partial cell map consistent while basis images are chosen.
template <class Leaf>
struct CellMapVisitor {
  const SRing& a;
  const SRing& b;
  std::vector<int> map, rev;
  bool fixed_map = false;
  std::vector<std::vector<unsigned>> assigned;
  int forced_level = -1;
  Elem forced = 0;
  Leaf on_leaf;

  CellMapVisitor(const SRing& a_, const SRing& b_, const std::vector<unsigned>* cm, Leaf leaf)
      : a(a_), b(b_), map(a_.rank(), -1), rev(b_.rank(), -1), assigned(a_.group().num_coords()), on_leaf(leaf) {
    if (cm) {
      fixed_map = true;
      for (unsigned i = 0; i < cm->size(); ++i) {
        map[i] = static_cast<int>((*cm)[i]);
        rev[(*cm)[i]] = static_cast<int>(i);
      }
    } else {
      map[0] = rev[0] = 0;
    }
  }
  ElementSet candidates(int level, ElementSet allowed) {
    if (level == forced_level) {
      ElementSet s;
      if (allowed.contains(forced)) s.insert(forced);
      return s;
    }
    return allowed;
  }
  bool accept(int level, Elem lo, Elem hi, const std::vector<Elem>& img) {
    for (Elem x = lo; x < hi; ++x) {
      const unsigned ca = a.cell_of(x), cb = b.cell_of(img[x]);
      if (map[ca] == static_cast<int>(cb)) continue;
      if (fixed_map || map[ca] >= 0 || rev[cb] >= 0 || a.cell(ca).size() != b.cell(cb).size()) return false;
      map[ca] = static_cast<int>(cb);
      rev[cb] = static_cast<int>(ca);
      assigned[level].push_back(ca);
    }
    return true;
  }
  void undo(int level) {
    for (unsigned ca : assigned[level]) {
      rev[map[ca]] = -1;
      map[ca] = -1;
    }
    assigned[level].clear();
  }
  bool leaf(const std::vector<Elem>& img, const std::vector<Elem>& bimg) { return on_leaf(img, bimg); }
};

template <class Leaf>
CellMapVisitor<Leaf> make_visitor(const SRing& a, const SRing& b, const std::vector<unsigned>* cm, Leaf leaf) {
  return CellMapVisitor<Leaf>(a, b, cm, std::move(leaf));
}

void check_same_group(const SRing& a, const SRing& b) {
  if (!(a.group() == b.group())) throw Error(ErrorKind::group_mismatch, a.group().to_string() + " vs " + b.group().to_string());
}

std::vector<unsigned> identity_map(unsigned r) {
  std::vector<unsigned> m(r);
  std::iota(m.begin(), m.end(), 0u);
  return m;
}

}  // namespace

std::vector<GroupAut> cayley_isos(const SRing& a, const SRing& b, std::size_t limit, const std::vector<unsigned>* cell_map) {
  check_same_group(a, b);
  std::vector<GroupAut> out;
  if (a.rank() != b.rank()) return out;
  const GroupSpec& g = a.group();
  auto v = make_visitor(a, b, cell_map, [&](const std::vector<Elem>&, const std::vector<Elem>& bimg) {
    if (out.size() >= limit) throw ResourceLimit("more than " + std::to_string(limit) + " Cayley isomorphisms");
    out.push_back(GroupAut::from_images(g, bimg));
    return false;
  });
  BasisSearch(g).run(v);
  return out;
}

std::optional<GroupAut> find_cayley_iso(const SRing& a, const SRing& b, const std::vector<unsigned>* cell_map) {
  check_same_group(a, b);
  if (a.rank() != b.rank()) return std::nullopt;
  std::optional<GroupAut> out;
  const GroupSpec& g = a.group();
  auto v = make_visitor(a, b, cell_map, [&](const std::vector<Elem>&, const std::vector<Elem>& bimg) {
    out = GroupAut::from_images(g, bimg);
    return true;
  });
  BasisSearch(g).run(v);
  return out;
}

bool cayley_isomorphic(const SRing& a, const SRing& b) {
  return a.group() == b.group() && a.rank() == b.rank() && canonical_form(a) == canonical_form(b);
}

PermGroup cayley_auts(const SRing& a) {
  const GroupSpec& g = a.group();
  const auto idm = identity_map(a.rank());
  std::vector<Perm> gens;
  for (int j = g.num_coords(); j-- > 0;) {
    auto orbit = [&] {
      std::vector<bool> in(g.order());
      std::vector<unsigned> q{g.basis(j)};
      in[g.basis(j)] = true;
      for (std::size_t k = 0; k < q.size(); ++k)
        for (const auto& s : gens)
          if (!in[s(q[k])]) {
            in[s(q[k])] = true;
            q.push_back(s(q[k]));
          }
      return in;
    }();
    ElementSet allowed = g.component(g.coord_prime(j)) - ElementSet::range(0, g.prefix(j));
    allowed &= a.cell(a.cell_of(g.basis(j)));
    for (Elem c : allowed.elements()) {
      if (orbit[c]) continue;
      std::optional<Perm> found;
      auto v = make_visitor(a, a, &idm, [&](const std::vector<Elem>& img, const std::vector<Elem>&) {
        std::vector<point_t> p(img.begin(), img.end());
        found = Perm(std::move(p));
        return true;
      });
      v.forced_level = j;
      v.forced = c;
      BasisSearch bs(g);
      bs.fix_identity_prefix(j);
      bs.run(v, j);
      if (found) {
        gens.push_back(*found);
        std::vector<bool> in(g.order());
        std::vector<unsigned> q{g.basis(j)};
        in[g.basis(j)] = true;
        for (std::size_t k = 0; k < q.size(); ++k)
          for (const auto& s : gens)
            if (!in[s(q[k])]) {
              in[s(q[k])] = true;
              q.push_back(s(q[k]));
            }
        orbit = std::move(in);
      }
    }
  }
  return PermGroup(g.order(), gens);
}

std::vector<GroupAut> cayley_aut_elements(const SRing& a, std::size_t limit) {
  const auto idm = identity_map(a.rank());
  return cayley_isos(a, a, limit, &idm);
}

// ---------------------------------------------------------------- scheme automorphisms

ColorMatrix cayley_colors(const SRing& a) {
  const GroupSpec& g = a.group();
  ColorMatrix m{g.order(), std::vector<std::uint16_t>(static_cast<std::size_t>(g.order()) * g.order())};
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y) m.c[x * m.n + y] = static_cast<std::uint16_t>(a.cell_of(g.sub(y, x)));
  return m;
}

PermGroup scheme_aut_stabilizer(const SRing& a) { return color_automorphisms_fixing(cayley_colors(a), 0); }

PermGroup scheme_aut(const SRing& a) {
  auto gens = right_regular(a.group()).generators();
  const PermGroup stab = scheme_aut_stabilizer(a);
  for (const auto& s : stab.generators()) gens.push_back(s);
  return PermGroup(a.order(), gens);
}

// ---------------------------------------------------------------- algebraic isomorphisms

std::vector<AlgebraicIso> algebraic_isos(const SRing& a, const SRing& b, std::size_t limit) {
  check_same_group(a, b);
  std::vector<AlgebraicIso> out;
  const unsigned r = a.rank();
  if (b.rank() != r) return out;
  auto dense = [r](const SRing& s) {
    std::vector<std::uint16_t> t(static_cast<std::size_t>(r) * r * r, 0);
    for (unsigned x = 0; x < r; ++x)
      for (unsigned y = 0; y < r; ++y)
        for (const auto& [z, c] : s.product(x, y)) t[(x * r + y) * r + z] = c;
    return t;
  };
  const auto ca = dense(a), cb = dense(b);
  auto c = [r](const std::vector<std::uint16_t>& t, unsigned x, unsigned y, unsigned z) { return t[(x * r + y) * r + z]; };
  std::vector<unsigned> map(r, 0);
  std::vector<bool> used(r, false);
  used[0] = true;
  auto rec = [&](auto&& self, unsigned i) -> void {
    if (i == r) {
      if (out.size() >= limit) throw ResourceLimit("more than " + std::to_string(limit) + " algebraic isomorphisms");
      out.push_back(AlgebraicIso{a, b, map});
      return;
    }
    for (unsigned j = 1; j < r; ++j) {
      if (used[j] || b.cell(j).size() != a.cell(i).size()) continue;
      map[i] = j;
      bool ok = true;
      for (unsigned x = 0; x <= i && ok; ++x)
        for (unsigned y = 0; y <= i && ok; ++y)
          for (unsigned z = 0; z <= i && ok; ++z) {
            if (x != i && y != i && z != i) continue;
            ok = c(ca, x, y, z) == c(cb, map[x], map[y], map[z]);
          }
      if (!ok) continue;
      used[j] = true;
      self(self, i + 1);
      used[j] = false;
    }
  };
  rec(rec, 1);
  return out;
}

namespace {

ColorMatrix pulled_back_colors(const AlgebraicIso& phi) {
  ColorMatrix m = cayley_colors(phi.target);
  auto inv = phi.inverse().map;
  for (auto& x : m.c) x = static_cast<std::uint16_t>(inv[x]);
  return m;
}

}  // namespace

std::optional<Perm> find_combinatorial_iso(const AlgebraicIso& phi) {
  check_same_group(phi.source, phi.target);
  return color_isomorphism(cayley_colors(phi.source), pulled_back_colors(phi), 0, 0);
}

std::vector<Perm> combinatorial_isos(const AlgebraicIso& phi, std::size_t limit) {
  auto f0 = find_combinatorial_iso(phi);
  if (!f0) return {};
  std::vector<Perm> out;
  for (const auto& g : scheme_aut(phi.source).elements(limit)) out.push_back(g * *f0);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- sections

bool preserves_section(const Perm& f, const Section& s) {
  const GroupSpec& g = s.ambient();
  if (f.degree() != g.order()) return false;
  std::vector<int> qimg(s.order(), -1);
  bool ok = true;
  s.upper().members().for_each([&](unsigned u) {
    if (!ok) return;
    const unsigned fu = f(u);
    if (!s.contains(fu)) { ok = false; return; }
    const Elem q = s.project(u), fq = s.project(fu);
    if (qimg[q] < 0) qimg[q] = static_cast<int>(fq);
    else if (qimg[q] != static_cast<int>(fq)) ok = false;
  });
  return ok;
}

Perm restrict(const Perm& f, const Section& s) {
  if (!preserves_section(f, s)) throw Error(ErrorKind::section_not_preserved, s.to_string());
  std::vector<point_t> img(s.order());
  for (Elem q = 0; q < s.order(); ++q) img[q] = static_cast<point_t>(s.project(f(s.lift(q))));
  return Perm(std::move(img));
}

std::vector<Perm> delta_S(const std::vector<Perm>& delta, const Section& s) {
  std::vector<Perm> out;
  for (const auto& f : delta)
    if (preserves_section(f, s)) out.push_back(restrict(f, s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Section algebraic_image(const AlgebraicIso& phi, const Section& s) {
  const GroupSpec& g = phi.target.group();
  return Section(Subgroup::from_set(g, phi.image(s.upper().members())),
                 Subgroup::from_set(g, phi.image(s.lower().members())));
}

// ---------------------------------------------------------------- minimality

std::optional<bool> is_2_minimal(const SRing& a, std::size_t index_bound) {
  PermGroup k = scheme_aut(a);
  PermGroup h = right_regular(a.group());
  if (k.order() / h.order() > index_bound) return std::nullopt;
  for (const auto& m : subgroups_between(h, k, index_bound))
    if (m.order() < k.order() && two_equivalent(m, k)) return false;
  return true;
}

std::optional<bool> is_cayley_minimal(const SRing& a, std::size_t order_bound) {
  PermGroup h = cayley_auts(a);
  if (h.order() > order_bound) return std::nullopt;
  const auto orbs = h.orbits();
  for (const auto& m : all_subgroups(h, order_bound))
    if (m.order() < h.order() && m.orbits() == orbs) return false;
  return true;
}

namespace {

bool orbits_are_cells(const SRing& a, const PermGroup& k) {
  auto orbs = k.orbits();
  if (orbs.size() != a.rank()) return false;
  for (const auto& o : orbs)
    if (!(ElementSet::of(o.begin(), o.end()) == a.cell(a.cell_of(o[0])))) return false;
  return true;
}

}  // namespace

bool is_cyclotomic(const SRing& a) { return orbits_are_cells(a, cayley_auts(a)); }
bool is_schurian(const SRing& a) { return orbits_are_cells(a, scheme_aut_stabilizer(a)); }

// ---------------------------------------------------------------- canonical form

namespace {

struct CanonVisitor {
  const SRing& a;
  const unsigned n;
  std::vector<int> label_of_cell;
  int next_label = 0;
  std::vector<std::vector<unsigned>> assigned;
  std::vector<std::uint8_t> cur, best;
  bool have_best = false;
  unsigned eq = 0;
  ElementSet level0;  // orbit representatives for the first basis image

  CanonVisitor(const SRing& s, ElementSet reps)
      : a(s), n(s.order()), label_of_cell(s.rank(), -1), assigned(s.group().num_coords()), cur(n), level0(reps) {
    label_of_cell[0] = 0;
    next_label = 1;
    cur[0] = 0;
  }
  ElementSet candidates(int level, ElementSet allowed) { return level == 0 ? allowed & level0 : allowed; }
  bool accept(int level, Elem lo, Elem hi, const std::vector<Elem>& img) {
    for (Elem x = lo; x < hi; ++x) {
      unsigned c = a.cell_of(img[x]);
      if (label_of_cell[c] < 0) {
        label_of_cell[c] = next_label++;
        assigned[level].push_back(c);
      }
      cur[x] = static_cast<std::uint8_t>(label_of_cell[c]);
    }
    if (!have_best) return true;
    unsigned e = std::min(eq, static_cast<unsigned>(lo));
    if (e < lo) {
      eq = e;
      return true;  // strictly smaller prefix already
    }
    unsigned k = lo;
    while (k < hi && cur[k] == best[k]) ++k;
    if (k == hi) {
      eq = hi;
      return true;
    }
    if (cur[k] < best[k]) {
      eq = k;
      return true;
    }
    return false;
  }
  void undo(int level) {
    for (unsigned c : assigned[level]) {
      label_of_cell[c] = -1;
      --next_label;
    }
    assigned[level].clear();
  }
  bool leaf(const std::vector<Elem>&, const std::vector<Elem>&) {
    if (!have_best || eq < n) {
      best = cur;
      have_best = true;
      eq = n;
    }
    return false;
  }
};

}  // namespace

std::vector<std::uint8_t> canonical_form(const SRing& a) {
  const GroupSpec& g = a.group();
  if (g.num_coords() == 0) return {0};
  ElementSet reps = g.all();
  if (aut_order_estimate(g) > 2000) {
    reps = ElementSet();
    for (const auto& o : cayley_auts(a).orbits()) reps.insert(o[0]);
  }
  CanonVisitor v(a, reps);
  BasisSearch(g).run(v);
  return v.best;
}

SRing canonical_representative(const SRing& a) {
  auto f = canonical_form(a);
  return SRing::from_labels(a.group(), std::vector<int>(f.begin(), f.end()));
}

}  // namespace sring
