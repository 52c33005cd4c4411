#include "sring/construct.hpp"

#include <algorithm>
#include <set>

#include "sring/error.hpp"

namespace sring {

SRing group_ring(const GroupSpec& g) {
  std::vector<int> labels(g.order());
  for (Elem x = 0; x < g.order(); ++x) labels[x] = static_cast<int>(x);
  return SRing::from_labels(g, labels);
}

SRing trivial_sring(const GroupSpec& g) {
  std::vector<int> labels(g.order(), 1);
  labels[0] = 0;
  return SRing::from_labels(g, labels);
}

namespace {

SRing orbit_sring(const GroupSpec& g, const std::vector<Perm>& gens) {
  PermGroup k(g.order(), gens);
  std::vector<int> labels(g.order());
  int id = 0;
  for (const auto& orb : k.orbits()) {
    for (unsigned x : orb) labels[x] = id;
    ++id;
  }
  return SRing::from_labels(g, labels);
}

}  // namespace

SRing cyclotomic(const GroupSpec& g, const std::vector<GroupAut>& gens) {
  std::vector<Perm> perms;
  for (const auto& a : gens) {
    if (!(a.group() == g)) throw Error(ErrorKind::group_mismatch, "automorphism of another group");
    perms.push_back(a.to_perm());
  }
  return orbit_sring(g, perms);
}

SRing schurian(const GroupSpec& g, const PermGroup& k) {
  if (k.degree() != g.order()) throw Error(ErrorKind::not_schurian, "degree differs from group order");
  for (int j = 0; j < g.num_coords(); ++j)
    if (!k.contains(translation(g, g.basis(j))))
      throw Error(ErrorKind::not_schurian, "group does not contain the right regular representation");
  return orbit_sring(g, k.stabilizer(0).generators());
}

DirectProduct direct_product(const GroupSpec& a, const GroupSpec& b) {
  std::vector<Factor> f;
  auto rank_of = [](const GroupSpec& g, int p) {
    for (const auto& x : g.factors())
      if (x.prime == p) return x.rank;
    return 0;
  };
  std::set<int> primes;
  for (const auto& x : a.factors()) primes.insert(x.prime);
  for (const auto& x : b.factors()) primes.insert(x.prime);
  for (int p : primes) f.push_back({p, rank_of(a, p) + rank_of(b, p)});
  DirectProduct out{f.empty() ? GroupSpec() : GroupSpec::make(f), {}, {}};
  const GroupSpec& g = out.group;
  auto embed = [&](const GroupSpec& src, bool second) {
    std::vector<Elem> e(src.order());
    for (Elem x = 0; x < src.order(); ++x) {
      std::vector<int> c(g.num_coords(), 0);
      for (std::size_t fi = 0; fi < src.factors().size(); ++fi) {
        const int p = src.factors()[fi].prime;
        int gf = 0;
        while (g.factors()[gf].prime != p) ++gf;
        const int offset = second ? rank_of(a, p) : 0;
        for (int j = 0; j < src.factors()[fi].rank; ++j)
          c[g.block_start(gf) + offset + j] = src.coord(x, src.block_start(static_cast<int>(fi)) + j);
      }
      e[x] = g.index(c);
    }
    return e;
  };
  out.embed_first = embed(a, false);
  out.embed_second = embed(b, true);
  return out;
}

SRing tensor(const SRing& a, const SRing& b) {
  DirectProduct dp = direct_product(a.group(), b.group());
  std::vector<ElementSet> cells;
  for (const auto& x : a.cells())
    for (const auto& y : b.cells()) {
      ElementSet c;
      x.for_each([&](unsigned u) {
        y.for_each([&](unsigned v) { c.insert(dp.group.add(dp.embed_first[u], dp.embed_second[v])); });
      });
      cells.push_back(c);
    }
  return SRing::from_cells(dp.group, cells);
}

SRing quotient(const SRing& a, const Section& s) {
  if (!(s.ambient() == a.group())) throw Error(ErrorKind::group_mismatch, "section of another group");
  if (!is_a_section(a, s)) throw Error(ErrorKind::not_a_section, s.to_string() + " is not an A-section");
  std::vector<ElementSet> cells;
  for (const auto& c : a.cells()) {
    if (!c.subset_of(s.upper().members())) continue;
    ElementSet img = s.project(c);
    if (std::find(cells.begin(), cells.end(), img) == cells.end()) cells.push_back(img);
  }
  return SRing::from_cells(s.quotient(), cells);
}

SRing restriction(const SRing& a, const Subgroup& u) {
  return quotient(a, Section(u, Subgroup::trivial(a.group())));
}

bool is_wreath(const SRing& a, const Section& s) {
  for (unsigned i = 0; i < a.rank(); ++i) {
    if (a.cell(i).subset_of(s.upper().members())) continue;
    if (!s.lower().subset_of(radical(a, i))) return false;
  }
  return true;
}

SRing wreath(const SRing& au, const SRing& aq, const Section& s) {
  const GroupSpec& g = s.ambient();
  Section su(s.upper(), Subgroup::trivial(g));
  Section sq(Subgroup::whole(g), s.lower());
  if (!(au.group() == su.quotient())) throw Error(ErrorKind::group_mismatch, "first factor is not over U");
  if (!(aq.group() == sq.quotient())) throw Error(ErrorKind::group_mismatch, "second factor is not over G/L");
  const ElementSet u_img = sq.project(s.upper().members());
  std::vector<ElementSet> cells, inner_images;
  for (const auto& c : au.cells()) {
    ElementSet amb = su.preimage(c);
    cells.push_back(amb);
    ElementSet img = sq.project(amb);
    if (std::find(inner_images.begin(), inner_images.end(), img) == inner_images.end()) inner_images.push_back(img);
  }
  std::vector<ElementSet> q_inner;
  for (const auto& c : aq.cells()) {
    if (c.subset_of(u_img)) {
      q_inner.push_back(c);
    } else {
      if (c.intersects(u_img)) throw Error(ErrorKind::not_wreath, "U/L is not a subgroup of the second factor");
      cells.push_back(sq.preimage(c));
    }
  }
  auto by_min = [](const ElementSet& x, const ElementSet& y) { return x.min() < y.min(); };
  std::sort(inner_images.begin(), inner_images.end(), by_min);
  std::sort(q_inner.begin(), q_inner.end(), by_min);
  if (inner_images != q_inner) throw Error(ErrorKind::not_wreath, "the factors induce different S-rings on " + s.to_string());
  return SRing::from_cells(g, cells);
}

std::vector<Section> decompositions(const SRing& a) {
  std::vector<Section> out;
  const unsigned n = a.order();
  for (auto& s : a_sections(a)) {
    if (s.lower().order() == 1 || s.upper().order() == n) continue;
    if (is_wreath(a, s)) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace sring
