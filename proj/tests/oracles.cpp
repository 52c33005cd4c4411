#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oracle {

bool is_sring(const GroupSpec& g, const Cells& cells) {
  const unsigned n = g.order();
  std::vector<int> cell_of(n, -1);
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (Elem x : cells[i]) {
      if (cell_of[x] != -1) return false;
      cell_of[x] = static_cast<int>(i);
    }
  for (int c : cell_of)
    if (c < 0) return false;
  bool identity_alone = false;
  for (const auto& c : cells)
    if (c.size() == 1 && c[0] == 0) identity_alone = true;
  if (!identity_alone) return false;
  for (const auto& c : cells) {
    std::set<int> inv;
    for (Elem x : c) inv.insert(cell_of[g.neg(x)]);
    if (inv.size() != 1) return false;
    if (cells[*inv.begin()].size() != c.size()) return false;
  }
  for (const auto& x : cells)
    for (const auto& y : cells) {
      std::vector<int> count(n, 0);
      for (Elem a : x)
        for (Elem b : y) ++count[g.add(a, b)];
      for (const auto& z : cells)
        for (Elem e : z)
          if (count[e] != count[z[0]]) return false;
    }
  return true;
}

namespace {

void partitions(const std::vector<Elem>& pts, std::size_t i, Cells& cur, const GroupSpec& g, std::vector<Cells>& out) {
  if (i == pts.size()) {
    Cells cells{{0}};
    for (auto c : cur) {
      std::sort(c.begin(), c.end());
      cells.push_back(c);
    }
    std::sort(cells.begin(), cells.end());
    if (is_sring(g, cells)) out.push_back(cells);
    return;
  }
  // Indices, not references: the recursion appends to cur.
  for (std::size_t k = 0, n = cur.size(); k < n; ++k) {
    cur[k].push_back(pts[i]);
    partitions(pts, i + 1, cur, g, out);
    cur[k].pop_back();
  }
  cur.push_back({pts[i]});
  partitions(pts, i + 1, cur, g, out);
  cur.pop_back();
}

}  // namespace

std::vector<Cells> all_srings(const GroupSpec& g) {
  if (g.order() > 9) throw std::invalid_argument("oracle::all_srings is limited to |G| <= 9");
  std::vector<Elem> pts;
  for (Elem x = 1; x < g.order(); ++x) pts.push_back(x);
  std::vector<Cells> out;
  Cells cur;
  partitions(pts, 0, cur, g, out);
  return out;
}

std::vector<Table> automorphisms(const GroupSpec& g) {
  const int k = g.num_coords();
  const unsigned n = g.order();
  std::vector<Table> out;
  std::vector<Elem> img(k, 0);
  // Odometer over all k-tuples of elements.
  while (true) {
    Table t(n);
    for (Elem x = 0; x < n; ++x) {
      Elem y = 0;
      for (int j = 0; j < k; ++j)
        for (int c = 0; c < g.coord(x, j); ++c) y = g.add(y, img[j]);
      t[x] = y;
    }
    bool ok = std::set<Elem>(t.begin(), t.end()).size() == n;
    for (Elem a = 0; ok && a < n; ++a)
      for (Elem b = 0; ok && b < n; ++b) ok = t[g.add(a, b)] == g.add(t[a], t[b]);
    if (ok) out.push_back(t);
    int j = 0;
    while (j < k && ++img[j] == n) img[j++] = 0;
    if (j == k) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t cayley_classes(const GroupSpec& g, const std::vector<Cells>& rings) {
  const auto auts = automorphisms(g);
  std::set<Cells> seen;
  std::size_t classes = 0;
  for (const auto& r : rings) {
    if (seen.count(r)) continue;
    ++classes;
    for (const auto& t : auts) {
      Cells img;
      for (const auto& c : r) {
        std::vector<Elem> d;
        for (Elem x : c) d.push_back(t[x]);
        std::sort(d.begin(), d.end());
        img.push_back(d);
      }
      std::sort(img.begin(), img.end());
      seen.insert(img);
    }
  }
  return classes;
}

std::vector<Table> closure(const std::vector<Table>& gens) {
  if (gens.empty()) return {};
  Table id(gens[0].size());
  std::iota(id.begin(), id.end(), 0);
  std::set<Table> seen{id};
  std::vector<Table> queue{id};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& s : gens) {
      Table t(id.size());
      for (std::size_t x = 0; x < t.size(); ++x) t[x] = s[queue[i][x]];
      if (seen.insert(t).second) queue.push_back(t);
    }
  return {seen.begin(), seen.end()};
}

namespace {

std::vector<unsigned> colours(const sring::SRing& a) {
  const auto& g = a.group();
  const unsigned n = g.order();
  std::vector<unsigned> c(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) c[x * n + y] = a.cell_of(g.sub(y, x));
  return c;
}

}  // namespace

std::size_t scheme_aut_order(const sring::SRing& a) {
  const unsigned n = a.order();
  if (n > 9) throw std::invalid_argument("oracle::scheme_aut_order is limited to |G| <= 9");
  const auto c = colours(a);
  std::vector<Elem> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (Elem x = 0; ok && x < n; ++x)
      for (Elem y = 0; ok && y < n; ++y) ok = c[p[x] * n + p[y]] == c[x * n + y];
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

std::size_t cayley_aut_order(const sring::SRing& a) {
  std::size_t count = 0;
  for (const auto& t : automorphisms(a.group())) {
    bool ok = true;
    for (Elem x = 0; ok && x < a.order(); ++x) ok = a.cell_of(t[x]) == a.cell_of(x);
    count += ok;
  }
  return count;
}

bool image_is_cayley_scheme(const sring::SRing& a, const Table& f) {
  const auto& g = a.group();
  const unsigned n = g.order();
  const auto c = colours(a);
  Table finv(n);
  for (Elem x = 0; x < n; ++x) finv[f[x]] = x;
  std::map<Elem, unsigned> by_difference;
  for (Elem u = 0; u < n; ++u)
    for (Elem v = 0; v < n; ++v) {
      const unsigned col = c[finv[u] * n + finv[v]];
      auto [it, fresh] = by_difference.emplace(g.sub(v, u), col);
      if (!fresh && it->second != col) return false;
    }
  return true;
}

Cells orbits(const GroupSpec& g, const std::vector<Table>& gens) {
  const unsigned n = g.order();
  std::vector<bool> done(n);
  Cells out;
  for (Elem x = 0; x < n; ++x) {
    if (done[x]) continue;
    std::vector<Elem> orb{x};
    done[x] = true;
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const auto& t : gens)
        if (!done[t[orb[i]]]) {
          done[t[orb[i]]] = true;
          orb.push_back(t[orb[i]]);
        }
    std::sort(orb.begin(), orb.end());
    out.push_back(orb);
  }
  return out;
}

std::size_t orbit_count(const GroupSpec& g, const std::vector<Table>& gens) { return orbits(g, gens).size(); }

}  // namespace oracle
