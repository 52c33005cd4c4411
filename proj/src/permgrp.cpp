#include "sring/permgrp.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "sring/error.hpp"

namespace sring {

namespace {

struct UnionFind {
  std::vector<unsigned> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  unsigned find(unsigned x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(unsigned a, unsigned b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

PermGroup::PermGroup(unsigned degree) : degree_(degree) {}

PermGroup::PermGroup(unsigned degree, std::vector<Perm> gens, const std::vector<unsigned>& base_prefix)
    : degree_(degree) {
  for (auto& g : gens) {
    if (g.degree() != degree) throw Error(ErrorKind::precondition_failed, "generator degree mismatch");
    if (!g.is_identity() && std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(std::move(g));
  }
  build(base_prefix);
}

PermGroup PermGroup::symmetric(unsigned n) {
  std::vector<Perm> gens;
  if (n >= 2) {
    std::vector<point_t> t(n), c(n);
    for (unsigned i = 0; i < n; ++i) {
      t[i] = static_cast<point_t>(i);
      c[i] = static_cast<point_t>((i + 1) % n);
    }
    std::swap(t[0], t[1]);
    gens.emplace_back(t);
    if (n > 2) gens.emplace_back(c);
  }
  return PermGroup(n, gens);
}

void PermGroup::add_level(unsigned base) {
  Level l;
  l.base = base;
  l.tpos.assign(degree_, -1);
  l.tpos[base] = 0;
  l.orbit = {base};
  l.trans = {Perm(degree_)};
  l.trans_inv = {Perm(degree_)};
  l.checked = {0};
  const std::size_t i = levels_.size();
  for (const auto& g : gens_) {
    bool fixes = true;
    for (std::size_t j = 0; j < i && fixes; ++j) fixes = g(levels_[j].base) == levels_[j].base;
    if (fixes) l.gens.push_back(g);
  }
  levels_.push_back(std::move(l));
  extend_orbit(i);
}

void PermGroup::extend_orbit(std::size_t li) {
  Level& l = levels_[li];
  for (std::size_t pos = 0; pos < l.orbit.size(); ++pos) {
    unsigned pt = l.orbit[pos];
    for (const auto& s : l.gens) {
      unsigned q = s(pt);
      if (l.tpos[q] >= 0) continue;
      l.tpos[q] = static_cast<int>(l.orbit.size());
      l.orbit.push_back(q);
      Perm u = l.trans[pos] * s;
      l.trans_inv.push_back(u.inverse());
      l.trans.push_back(std::move(u));
      l.checked.push_back(0);
    }
  }
}

std::pair<Perm, std::size_t> PermGroup::strip(Perm h, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    unsigned x = h(levels_[l].base);
    int t = levels_[l].tpos[x];
    if (t < 0) return {std::move(h), l};
    if (t > 0) h = h * levels_[l].trans_inv[t];
  }
  return {std::move(h), levels_.size()};
}

void PermGroup::build(const std::vector<unsigned>& base_prefix) {
  levels_.clear();
  if (gens_.empty()) return;
  for (unsigned b : base_prefix) {
    if (b >= degree_) throw Error(ErrorKind::precondition_failed, "base point out of range");
    add_level(b);
  }
  for (const auto& g : gens_) {
    bool fixes = true;
    for (const auto& l : levels_) fixes = fixes && g(l.base) == l.base;
    if (fixes) add_level(g.smallest_moved());
  }
  // Schreier-Sims, working upwards from the deepest level.
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    bool jumped = false;
    for (std::size_t pos = 0; pos < levels_[i].orbit.size() && !jumped; ++pos) {
      while (levels_[i].checked[pos] < levels_[i].gens.size()) {
        const std::size_t gi = levels_[i].checked[pos]++;
        const Level& L = levels_[i];
        const Perm& s = L.gens[gi];
        unsigned pt = L.orbit[pos];
        Perm h = L.trans[pos] * s * L.trans_inv[L.tpos[s(pt)]];
        if (h.is_identity()) continue;
        auto [r, j] = strip(std::move(h), i + 1);
        if (r.is_identity()) continue;
        if (j == levels_.size()) {
          add_level(r.smallest_moved());
          levels_.back().gens.clear();
          levels_.back().gens.push_back(r);
          extend_orbit(j);
          for (std::size_t l = i + 1; l < j; ++l) {
            levels_[l].gens.push_back(r);
            extend_orbit(l);
          }
        } else {
          for (std::size_t l = i + 1; l <= j; ++l) {
            levels_[l].gens.push_back(r);
            extend_orbit(l);
          }
        }
        i = static_cast<std::ptrdiff_t>(j);
        jumped = true;
        break;
      }
    }
    if (!jumped) --i;
  }
}

BigInt PermGroup::order() const {
  BigInt o = 1;
  for (const auto& l : levels_) o *= l.orbit.size();
  return o;
}

bool PermGroup::is_symmetric() const { return order() == factorial(degree_); }

bool PermGroup::contains(const Perm& p) const {
  if (p.degree() != degree_) return false;
  return strip(p, 0).first.is_identity();
}

bool PermGroup::contains(const PermGroup& h) const {
  for (const auto& g : h.generators())
    if (!contains(g)) return false;
  return true;
}

std::vector<unsigned> PermGroup::base() const {
  std::vector<unsigned> b;
  for (const auto& l : levels_) b.push_back(l.base);
  return b;
}

std::vector<unsigned> PermGroup::orbit(unsigned x) const {
  std::vector<unsigned> orb{x};
  std::vector<bool> seen(degree_);
  seen[x] = true;
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (const auto& g : gens_) {
      unsigned y = g(orb[i]);
      if (!seen[y]) {
        seen[y] = true;
        orb.push_back(y);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

std::vector<std::vector<unsigned>> PermGroup::orbits() const {
  UnionFind uf(degree_);
  for (const auto& g : gens_)
    for (unsigned x = 0; x < degree_; ++x) uf.unite(x, g(x));
  std::map<unsigned, std::vector<unsigned>> m;
  for (unsigned x = 0; x < degree_; ++x) m[uf.find(x)].push_back(x);
  std::vector<std::vector<unsigned>> out;
  for (auto& [k, v] : m) out.push_back(std::move(v));
  return out;
}

PermGroup PermGroup::stabilizer(unsigned x) const {
  if (gens_.empty()) return PermGroup(degree_);
  PermGroup chain(degree_, gens_, {x});
  if (chain.levels_.size() < 2) return PermGroup(degree_);
  return PermGroup(degree_, chain.levels_[1].gens);
}

std::vector<Perm> PermGroup::elements(std::size_t limit) const {
  if (order() > limit) throw ResourceLimit("group of order " + order().str() + " exceeds " + std::to_string(limit));
  std::vector<Perm> out{Perm(degree_)};
  for (std::size_t l = levels_.size(); l-- > 0;) {
    std::vector<Perm> next;
    next.reserve(out.size() * levels_[l].trans.size());
    for (const auto& x : out)
      for (const auto& u : levels_[l].trans) next.push_back(x * u);
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Perm PermGroup::random_element(std::mt19937_64& rng) const {
  Perm g(degree_);
  for (std::size_t l = levels_.size(); l-- > 0;) {
    std::uniform_int_distribution<std::size_t> d(0, levels_[l].trans.size() - 1);
    g = g * levels_[l].trans[d(rng)];
  }
  return g;
}

// ---------------------------------------------------------------- free functions

Perm translation(const GroupSpec& g, Elem by) {
  std::vector<point_t> img(g.order());
  for (Elem x = 0; x < g.order(); ++x) img[x] = static_cast<point_t>(g.add(x, by));
  return Perm(std::move(img));
}

PermGroup right_regular(const GroupSpec& g) {
  std::vector<Perm> gens;
  for (int j = 0; j < g.num_coords(); ++j) gens.push_back(translation(g, g.basis(j)));
  return PermGroup(g.order(), gens);
}

PermGroup aut_group(const GroupSpec& g) {
  std::vector<Perm> gens;
  for (std::size_t f = 0; f < g.factors().size(); ++f) {
    const int p = g.factors()[f].prime, n = g.factors()[f].rank, start = g.block_start(static_cast<int>(f));
    auto base_images = [&] {
      std::vector<Elem> im;
      for (int j = 0; j < g.num_coords(); ++j) im.push_back(g.basis(j));
      return im;
    };
    if (p > 2) {
      int w = 2;
      for (; w < p; ++w) {
        int x = 1, k = 0;
        do {
          x = x * w % p;
          ++k;
        } while (x != 1);
        if (k == p - 1) break;
      }
      auto im = base_images();
      im[start] = g.mul(w, g.basis(start));
      gens.push_back(GroupAut::from_images(g, im).to_perm());
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        auto im = base_images();
        im[start + j] = g.add(g.basis(start + j), g.basis(start + i));
        gens.push_back(GroupAut::from_images(g, im).to_perm());
      }
  }
  return PermGroup(g.order(), gens);
}

std::vector<unsigned> pair_orbit_labels(const PermGroup& k) {
  const unsigned n = k.degree();
  UnionFind uf(static_cast<std::size_t>(n) * n);
  for (const auto& g : k.generators())
    for (unsigned x = 0; x < n; ++x)
      for (unsigned y = 0; y < n; ++y) uf.unite(x * n + y, g(x) * n + g(y));
  std::vector<unsigned> label(static_cast<std::size_t>(n) * n);
  std::unordered_map<unsigned, unsigned> ids;
  for (unsigned i = 0; i < n * n; ++i) {
    auto [it, _] = ids.emplace(uf.find(i), static_cast<unsigned>(ids.size()));
    label[i] = it->second;
  }
  return label;
}

std::vector<std::vector<unsigned>> orbits_pairs(const PermGroup& k) {
  auto label = pair_orbit_labels(k);
  unsigned m = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::vector<unsigned>> out(m);
  for (unsigned i = 0; i < label.size(); ++i) out[label[i]].push_back(i);
  return out;
}

bool two_equivalent(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree()) return false;
  return pair_orbit_labels(a) == pair_orbit_labels(b);
}

namespace {

// Closes a list of subgroups under adjoining one element of k at a time.
std::vector<PermGroup> cyclic_extension(const PermGroup& start, const std::vector<Perm>& elems) {
  std::vector<PermGroup> found{start};
  std::map<BigInt, std::vector<std::size_t>> by_order{{start.order(), {0}}};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& x : elems) {
      if (found[i].contains(x)) continue;
      auto gens = found[i].generators();
      gens.push_back(x);
      PermGroup m(found[i].degree(), gens);
      auto& bucket = by_order[m.order()];
      bool dup = false;
      for (std::size_t j : bucket)
        if (found[j].contains(m)) { dup = true; break; }
      if (dup) continue;
      bucket.push_back(found.size());
      found.push_back(std::move(m));
    }
  }
  return found;
}

}  // namespace

std::vector<PermGroup> subgroups_between(const PermGroup& h, const PermGroup& k, std::size_t index_bound) {
  if (!k.contains(h)) throw Error(ErrorKind::precondition_failed, "h is not a subgroup of k");
  BigInt index = k.order() / h.order();
  if (index > index_bound) throw ResourceLimit("index " + index.str() + " exceeds " + std::to_string(index_bound));
  // Adjoining coset representatives suffices; keep one element per right coset of h.
  std::vector<Perm> reps;
  auto elems = k.elements(static_cast<std::size_t>(k.order()));
  std::unordered_set<Perm, PermHash> covered;
  auto helems = h.elements(static_cast<std::size_t>(h.order()));
  for (const auto& x : elems) {
    if (covered.count(x)) continue;
    reps.push_back(x);
    for (const auto& y : helems) covered.insert(y * x);
  }
  return cyclic_extension(h, reps);
}

std::vector<PermGroup> all_subgroups(const PermGroup& k, std::size_t order_bound) {
  auto elems = k.elements(order_bound);
  return cyclic_extension(PermGroup(k.degree()), elems);
}

namespace {

bool fixed_point_free(const Perm& p) {
  for (unsigned x = 0; x < p.degree(); ++x)
    if (p(x) == x) return false;
  return true;
}

unsigned perm_order(const Perm& p) {
  unsigned o = 1;
  Perm q = p;
  while (!q.is_identity()) {
    q = q * p;
    ++o;
  }
  return o;
}

// A regular group is determined by the element carrying 0 to each point.
std::vector<point_t> regular_key(const std::vector<Perm>& elems, unsigned n) {
  std::vector<point_t> key(static_cast<std::size_t>(n) * n);
  for (const auto& e : elems) {
    unsigned x = e(0);
    for (unsigned y = 0; y < n; ++y) key[x * n + y] = static_cast<point_t>(e(y));
  }
  return key;
}

struct KeyHash {
  std::size_t operator()(const std::vector<point_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

std::vector<Perm> key_elements(const std::vector<point_t>& key, unsigned n) {
  std::vector<Perm> out;
  for (unsigned x = 0; x < n; ++x)
    out.emplace_back(std::vector<point_t>(key.begin() + x * n, key.begin() + (x + 1) * n));
  return out;
}

}  // namespace

std::vector<PermGroup> regular_subgroups(const PermGroup& k, const GroupSpec& g, std::size_t order_bound) {
  const unsigned n = g.order();
  if (k.degree() != n) throw Error(ErrorKind::precondition_failed, "degree differs from group order");
  if (k.is_symmetric()) return {right_regular(g)};
  const auto elems = k.elements(order_bound);

  std::vector<int> slot_prime;
  for (int j = 0; j < g.num_coords(); ++j) slot_prime.push_back(g.coord_prime(j));
  std::vector<Perm> pool;
  std::vector<unsigned> pool_prime;
  for (const auto& e : elems) {
    if (e.is_identity() || !fixed_point_free(e)) continue;
    unsigned o = perm_order(e);
    if (std::find(slot_prime.begin(), slot_prime.end(), static_cast<int>(o)) == slot_prime.end()) continue;
    pool.push_back(e);
    pool_prime.push_back(o);
  }
  std::unordered_map<Perm, std::size_t, PermHash> pool_index;
  for (std::size_t i = 0; i < pool.size(); ++i) pool_index[pool[i]] = i;

  // Conjugacy class representatives for the first slot.
  std::vector<std::size_t> first_reps;
  {
    std::vector<bool> done(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (done[i] || pool_prime[i] != static_cast<unsigned>(slot_prime[0])) continue;
      first_reps.push_back(i);
      std::deque<std::size_t> q{i};
      done[i] = true;
      while (!q.empty()) {
        std::size_t c = q.front();
        q.pop_front();
        for (const auto& s : k.generators()) {
          std::size_t d = pool_index.at(s.inverse() * pool[c] * s);
          if (!done[d]) {
            done[d] = true;
            q.push_back(d);
          }
        }
      }
    }
  }

  std::unordered_set<std::vector<point_t>, KeyHash> found;
  std::vector<std::vector<point_t>> found_list;
  const std::size_t slots = slot_prime.size();
  std::vector<std::size_t> chosen;
  // Elements of the group generated so far (all fixed-point-free except identity).
  std::vector<std::vector<Perm>> group_stack{{Perm(n)}};
  group_stack.reserve(slots + 1);  // extend() holds references into it

  auto extend = [&](auto&& self) -> void {
    const std::size_t t = chosen.size();
    if (t == slots) {
      auto key = regular_key(group_stack.back(), n);
      if (found.insert(key).second) found_list.push_back(std::move(key));
      return;
    }
    const auto& cur = group_stack.back();
    std::vector<std::size_t> cands;
    if (t == 0) {
      cands = first_reps;
    } else {
      std::size_t lo = 0;
      if (t >= 2 && slot_prime[t - 1] == slot_prime[t]) lo = chosen[t - 1] + 1;
      for (std::size_t i = lo; i < pool.size(); ++i)
        if (pool_prime[i] == static_cast<unsigned>(slot_prime[t])) cands.push_back(i);
    }
    for (std::size_t ci : cands) {
      const Perm& y = pool[ci];
      bool ok = true;
      for (std::size_t c : chosen)
        if (pool[c] * y != y * pool[c]) { ok = false; break; }
      if (!ok) continue;
      if (std::find(cur.begin(), cur.end(), y) != cur.end()) continue;
      std::vector<Perm> next = cur;
      Perm pw = y;
      for (unsigned c = 1; c < pool_prime[ci] && ok; ++c, pw = pw * y)
        for (const auto& r : cur) {
          Perm z = r * pw;
          if (!fixed_point_free(z)) { ok = false; break; }
          next.push_back(std::move(z));
        }
      if (!ok) continue;
      chosen.push_back(ci);
      group_stack.push_back(std::move(next));
      self(self);
      group_stack.pop_back();
      chosen.pop_back();
    }
  };
  extend(extend);

  // Split the found groups into k-conjugacy classes, the class of G_right first.
  std::sort(found_list.begin(), found_list.end());
  {
    std::vector<Perm> translations;
    for (Elem x = 0; x < n; ++x) translations.push_back(translation(g, x));
    auto rk = regular_key(translations, n);
    auto it = std::find(found_list.begin(), found_list.end(), rk);
    if (it != found_list.end()) std::rotate(found_list.begin(), it, it + 1);
  }
  std::unordered_set<std::vector<point_t>, KeyHash> assigned;
  std::vector<PermGroup> reps;
  for (const auto& key : found_list) {
    if (assigned.count(key)) continue;
    auto els = key_elements(key, n);
    std::vector<Perm> gens;
    for (int j = 0; j < g.num_coords(); ++j)
      for (const auto& e : els)
        if (e(0) == g.basis(j)) gens.push_back(e);
    reps.emplace_back(n, gens);
    std::deque<std::vector<point_t>> q{key};
    assigned.insert(key);
    while (!q.empty()) {
      auto cur = key_elements(q.front(), n);
      q.pop_front();
      for (const auto& s : k.generators()) {
        std::vector<Perm> conj;
        for (const auto& e : cur) conj.push_back(s.inverse() * e * s);
        auto ck = regular_key(conj, n);
        if (assigned.insert(ck).second) q.push_back(std::move(ck));
      }
    }
  }
  return reps;
}

}  // namespace sring
