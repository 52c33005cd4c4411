#include "sring/sring.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sring/error.hpp"

namespace sring {

namespace {

std::string set_str(const ElementSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](unsigned x) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(x);
  });
  return out + "}";
}

bool is_power_of(unsigned n, unsigned p) {
  while (n > 1 && n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

void validate_partition(const GroupSpec& g, const std::vector<ElementSet>& cells) {
  const unsigned n = g.order();
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].empty()) throw Error(ErrorKind::not_a_partition, "empty cell");
    if (cells[i].max() >= n) throw Error(ErrorKind::not_a_partition, "element out of range in " + set_str(cells[i]));
    cells[i].for_each([&](unsigned x) {
      if (owner[x] >= 0) throw Error(ErrorKind::not_a_partition, "element " + std::to_string(x) + " in two cells");
      owner[x] = static_cast<int>(i);
    });
  }
  for (unsigned x = 0; x < n; ++x)
    if (owner[x] < 0) throw Error(ErrorKind::not_a_partition, "element " + std::to_string(x) + " not covered");
  if (cells[owner[0]].size() != 1) throw Error(ErrorKind::identity_not_a_cell, "cell of identity is " + set_str(cells[owner[0]]));
  for (const auto& c : cells) {
    ElementSet inv;
    c.for_each([&](unsigned x) { inv.insert(g.neg(x)); });
    if (!(cells[owner[inv.min()]] == inv))
      throw Error(ErrorKind::not_inverse_closed, "inverse of " + set_str(c) + " is " + set_str(inv));
  }
  std::vector<unsigned> count(n);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto xs = cells[i].elements();
    for (std::size_t j = 0; j < cells.size(); ++j) {
      std::fill(count.begin(), count.end(), 0);
      cells[j].for_each([&](unsigned y) {
        for (Elem x : xs) ++count[g.add(x, y)];
      });
      for (const auto& z : cells) {
        unsigned first = count[z.min()];
        z.for_each([&](unsigned w) {
          if (count[w] != first)
            throw Error(ErrorKind::not_closed, set_str(cells[i]) + " * " + set_str(cells[j]) + " hits " +
                                                   std::to_string(z.min()) + " " + std::to_string(first) + " times but " +
                                                   std::to_string(w) + " " + std::to_string(count[w]) + " times");
        });
      }
    }
  }
}

SRing SRing::from_cells(const GroupSpec& g, const std::vector<ElementSet>& cells) {
  validate_partition(g, cells);
  auto d = std::make_shared<Data>();
  d->group = g;
  d->cells = cells;
  std::sort(d->cells.begin(), d->cells.end(), [](const ElementSet& a, const ElementSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.min() < b.min();
  });
  d->cell_of.assign(g.order(), 0);
  for (std::size_t i = 0; i < d->cells.size(); ++i)
    d->cells[i].for_each([&](unsigned x) { d->cell_of[x] = static_cast<std::uint16_t>(i); });
  d->inverse.resize(d->cells.size());
  for (std::size_t i = 0; i < d->cells.size(); ++i) d->inverse[i] = d->cell_of[g.neg(d->cells[i].min())];
  SRing a;
  a.d_ = std::move(d);
  return a;
}

SRing SRing::from_labels(const GroupSpec& g, const std::vector<int>& labels) {
  if (labels.size() != g.order()) throw Error(ErrorKind::not_a_partition, "label vector length");
  std::map<int, ElementSet> m;
  for (Elem x = 0; x < g.order(); ++x) m[labels[x]].insert(x);
  std::vector<ElementSet> cells;
  for (auto& [k, v] : m) cells.push_back(v);
  return from_cells(g, cells);
}

bool SRing::is_union_of_cells(const ElementSet& s) const {
  bool ok = true;
  s.for_each([&](unsigned x) { ok = ok && cell(cell_of(x)).subset_of(s); });
  return ok;
}

const std::vector<std::pair<std::uint16_t, std::uint16_t>>& SRing::product(unsigned x, unsigned y) const {
  std::call_once(d_->constants_once, [this] {
    const unsigned r = rank(), n = order();
    d_->constants.assign(static_cast<std::size_t>(r) * r, {});
    std::vector<unsigned> count(r);
    for (unsigned i = 0; i < r; ++i) {
      auto xs = cell(i).elements();
      for (unsigned j = 0; j < r; ++j) {
        std::fill(count.begin(), count.end(), 0);
        cell(j).for_each([&](unsigned b) {
          for (Elem a : xs) ++count[d_->cell_of[group().add(a, b)]];
        });
        auto& out = d_->constants[i * r + j];
        for (unsigned z = 0; z < r; ++z)
          if (count[z]) out.emplace_back(z, count[z] / cell(z).size());
      }
    }
    (void)n;
  });
  return d_->constants[x * rank() + y];
}

unsigned SRing::structure_constant(unsigned x, unsigned y, unsigned z) const {
  for (const auto& [c, v] : product(x, y))
    if (c == z) return v;
  return 0;
}

bool SRing::is_p_sring() const {
  if (!group().is_p_group()) return false;
  const unsigned p = group().factors()[0].prime;
  for (const auto& c : cells())
    if (!is_power_of(c.size(), p)) return false;
  return true;
}

Subgroup radical(const SRing& a, unsigned cell) {
  const GroupSpec& g = a.group();
  const ElementSet& x = a.cell(cell);
  std::vector<Elem> gens;
  for (Elem t = 0; t < g.order(); ++t) {
    bool ok = true;
    x.for_each([&](unsigned y) { ok = ok && x.contains(g.add(y, t)); });
    if (ok) gens.push_back(t);
  }
  return Subgroup::span(g, gens);
}

Subgroup thin_radical(const SRing& a) {
  std::vector<Elem> gens;
  for (const auto& c : a.cells())
    if (c.size() == 1) gens.push_back(c.min());
  return Subgroup::span(a.group(), gens);
}

bool is_a_subgroup(const SRing& a, const Subgroup& u) {
  return u.group() == a.group() && a.is_union_of_cells(u.members());
}

bool is_a_section(const SRing& a, const Section& s) {
  return is_a_subgroup(a, s.upper()) && is_a_subgroup(a, s.lower());
}

std::vector<Subgroup> a_subgroups(const SRing& a) {
  std::vector<Subgroup> out;
  for (auto& u : enumerate_subgroups(a.group()))
    if (a.is_union_of_cells(u.members())) out.push_back(std::move(u));
  return out;
}

std::vector<Section> a_sections(const SRing& a) {
  auto subs = a_subgroups(a);
  std::vector<Section> out;
  for (const auto& u : subs)
    for (const auto& l : subs)
      if (l.subset_of(u)) out.emplace_back(u, l);
  return out;
}

unsigned power_map_cell(const SRing& a, unsigned cell, long m) {
  if (std::gcd(static_cast<long>(a.order()), m) != 1)
    throw Error(ErrorKind::precondition_failed, "multiplier " + std::to_string(m) + " not coprime to group order");
  ElementSet img;
  a.cell(cell).for_each([&](unsigned x) { img.insert(a.group().mul(m, x)); });
  unsigned c = a.cell_of(img.min());
  if (!(a.cell(c) == img))
    throw Error(ErrorKind::not_closed, "X^(" + std::to_string(m) + ") = " + set_str(img) + " is not a cell");
  return c;
}

SRing schur_closure(const GroupSpec& g, const std::vector<int>& labels) {
  const unsigned n = g.order();
  if (labels.size() != n) throw Error(ErrorKind::not_a_partition, "label vector length");
  std::vector<unsigned> color(n);
  {
    std::map<std::pair<int, int>, unsigned> ids;
    for (Elem x = 0; x < n; ++x) ids[{x == 0 ? 0 : 1, labels[x]}] = 0;
    unsigned k = 0;
    for (auto& [key, v] : ids) v = k++;
    for (Elem x = 0; x < n; ++x) color[x] = ids[{x == 0 ? 0 : 1, labels[x]}];
  }
  std::size_t ncolors = 0;
  std::vector<std::vector<unsigned>> sig(n);
  while (true) {
    std::size_t k = 1 + *std::max_element(color.begin(), color.end());
    if (k == ncolors) break;
    ncolors = k;
    for (Elem z = 0; z < n; ++z) {
      auto& s = sig[z];
      s.clear();
      s.push_back(color[z]);
      s.push_back(color[g.neg(z)]);
      const std::size_t head = s.size();
      for (Elem x = 0; x < n; ++x) s.push_back(static_cast<unsigned>(color[x] * k + color[g.sub(z, x)]));
      std::sort(s.begin() + static_cast<std::ptrdiff_t>(head), s.end());
    }
    std::map<std::vector<unsigned>, unsigned> ids;
    for (Elem z = 0; z < n; ++z) ids.emplace(sig[z], 0);
    unsigned c = 0;
    for (auto& [key, v] : ids) v = c++;
    for (Elem z = 0; z < n; ++z) color[z] = ids[sig[z]];
  }
  std::vector<int> out(color.begin(), color.end());
  return SRing::from_labels(g, out);
}

}  // namespace sring
