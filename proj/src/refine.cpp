#include "sring/refine.hpp"

#include <algorithm>
#include <numeric>

#include "sring/error.hpp"

namespace sring {

namespace {

struct Partition {
  std::vector<unsigned> elems;  // vertices in position order
  std::vector<unsigned> pos;    // position of each vertex
  std::vector<unsigned> start;  // start position of the cell of each vertex
  std::vector<unsigned> end;    // end of the cell starting at a position
  unsigned cells = 0;

  explicit Partition(unsigned n) : elems(n), pos(n), start(n, 0), end(n, n), cells(n ? 1 : 0) {
    std::iota(elems.begin(), elems.end(), 0u);
    std::iota(pos.begin(), pos.end(), 0u);
  }
  bool discrete() const { return cells == elems.size(); }

  void individualize(unsigned v) {
    const unsigned s = start[v], e = end[s];
    if (e - s == 1) return;
    const unsigned pv = pos[v], w = elems[s];
    std::swap(elems[s], elems[pv]);
    pos[w] = pv;
    pos[v] = s;
    for (unsigned i = s + 1; i < e; ++i) start[elems[i]] = s + 1;
    end[s] = s + 1;
    end[s + 1] = e;
    ++cells;
  }
};

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  return h;
}

// Equitable refinement; the returned trace is invariant under relabelling.
std::uint64_t refine(Partition& p, const ColorMatrix& m) {
  const unsigned n = m.n;
  std::uint64_t trace = 0;
  std::vector<std::vector<std::uint32_t>> sig(n);
  while (true) {
    const unsigned before = p.cells;
    for (unsigned v = 0; v < n; ++v) {
      auto& s = sig[v];
      s.resize(2 * n);
      for (unsigned w = 0; w < n; ++w) {
        s[2 * w] = (m.at(v, w) * n + p.start[w]) * 2;
        s[2 * w + 1] = (m.at(w, v) * n + p.start[w]) * 2 + 1;
      }
      std::sort(s.begin(), s.end());
    }
    std::vector<unsigned> starts;
    for (unsigned i = 0; i < n; i = p.end[i]) starts.push_back(i);
    for (unsigned s : starts) {
      const unsigned e = p.end[s];
      if (e - s == 1) continue;
      std::stable_sort(p.elems.begin() + s, p.elems.begin() + e,
                       [&](unsigned a, unsigned b) { return sig[a] < sig[b]; });
      unsigned cs = s;
      for (unsigned i = s; i < e; ++i) {
        const unsigned v = p.elems[i];
        p.pos[v] = i;
        if (i > s && sig[v] != sig[p.elems[i - 1]]) {
          p.end[cs] = i;
          cs = i;
          ++p.cells;
        }
        p.start[v] = cs;
      }
      p.end[cs] = e;
      if (cs != s) {
        trace = mix(trace, s);
        for (unsigned i = s; i < e; i = p.end[i]) {
          trace = mix(trace, p.end[i] - i);
          for (auto x : sig[p.elems[i]]) trace = mix(trace, x);
        }
      }
    }
    if (p.cells == before) break;
  }
  return mix(trace, p.cells);
}

struct Path {
  std::vector<Partition> parts;          // partition before individualizing at each level
  std::vector<unsigned> target;          // start of the target cell
  std::vector<std::uint64_t> traces;     // trace after refining at level i (traces[0] = root)
  Partition leaf{0};
};

Path left_path(const ColorMatrix& m, unsigned v0) {
  Path path;
  Partition p(m.n);
  p.individualize(v0);
  path.traces.push_back(refine(p, m));
  while (!p.discrete()) {
    unsigned s = 0;
    while (p.end[s] - s == 1) s = p.end[s];
    path.parts.push_back(p);
    path.target.push_back(s);
    p.individualize(p.elems[s]);
    path.traces.push_back(refine(p, m));
  }
  path.leaf = p;
  return path;
}

template <class OnLeaf>
bool dfs(const Path& path, const ColorMatrix& mr, std::size_t level, const Partition& q, OnLeaf&& on_leaf) {
  if (level == path.parts.size()) {
    std::vector<point_t> img(q.elems.size());
    for (std::size_t k = 0; k < q.elems.size(); ++k) img[path.leaf.elems[k]] = static_cast<point_t>(q.elems[k]);
    return on_leaf(Perm(std::move(img)));
  }
  const unsigned s = path.target[level];
  for (unsigned i = s; i < q.end[s]; ++i) {
    Partition r = q;
    r.individualize(q.elems[i]);
    if (refine(r, mr) != path.traces[level + 1] || r.cells != (level + 1 < path.parts.size() ? path.parts[level + 1].cells : path.leaf.cells))
      continue;
    if (dfs(path, mr, level + 1, r, on_leaf)) return true;
  }
  return false;
}

}  // namespace

bool preserves_colors(const ColorMatrix& a, const ColorMatrix& b, const Perm& f) {
  for (unsigned x = 0; x < a.n; ++x)
    for (unsigned y = 0; y < a.n; ++y)
      if (a.at(x, y) != b.at(f(x), f(y))) return false;
  return true;
}

PermGroup color_automorphisms_fixing(const ColorMatrix& m, unsigned v0) {
  if (m.n > 256) throw Error(ErrorKind::precondition_failed, "degree exceeds 256");
  const Path path = left_path(m, v0);
  std::vector<Perm> gens;
  for (std::size_t i = path.parts.size(); i-- > 0;) {
    const Partition& p = path.parts[i];
    const unsigned s = path.target[i];
    const unsigned base = p.elems[s];
    auto orbit_of_base = [&] {
      std::vector<bool> in(m.n);
      std::vector<unsigned> q{base};
      in[base] = true;
      for (std::size_t k = 0; k < q.size(); ++k)
        for (const auto& g : gens)
          if (!in[g(q[k])]) {
            in[g(q[k])] = true;
            q.push_back(g(q[k]));
          }
      return in;
    };
    auto orbit = orbit_of_base();
    for (unsigned k = s + 1; k < p.end[s]; ++k) {
      const unsigned gamma = p.elems[k];
      if (orbit[gamma]) continue;
      Partition r = p;
      r.individualize(gamma);
      if (refine(r, m) != path.traces[i + 1]) continue;
      std::optional<Perm> found;
      Partition root = r;
      dfs(path, m, i + 1, root, [&](Perm f) {
        if (!preserves_colors(m, m, f)) return false;
        found = std::move(f);
        return true;
      });
      if (found) {
        gens.push_back(*found);
        orbit = orbit_of_base();
      }
    }
  }
  return PermGroup(m.n, gens);
}

std::optional<Perm> color_isomorphism(const ColorMatrix& a, const ColorMatrix& b, unsigned a0, unsigned b0) {
  if (a.n != b.n) return std::nullopt;
  const Path path = left_path(a, a0);
  Partition q(b.n);
  q.individualize(b0);
  if (refine(q, b) != path.traces[0]) return std::nullopt;
  std::optional<Perm> found;
  dfs(path, b, 0, q, [&](Perm f) {
    if (!preserves_colors(a, b, f)) return false;
    found = std::move(f);
    return true;
  });
  return found;
}

}  // namespace sring
