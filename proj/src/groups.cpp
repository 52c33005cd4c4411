#include "sring/groups.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <unordered_set>

#include "sring/error.hpp"
#include "sring/linalg.hpp"

namespace sring {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_group: return "invalid group";
    case ErrorKind::group_mismatch: return "group mismatch";
    case ErrorKind::not_a_partition: return "not a partition";
    case ErrorKind::identity_not_a_cell: return "identity is not a cell";
    case ErrorKind::not_inverse_closed: return "not inverse closed";
    case ErrorKind::not_closed: return "not closed under multiplication";
    case ErrorKind::not_a_subgroup: return "not a subgroup";
    case ErrorKind::not_a_section: return "not a section";
    case ErrorKind::not_schurian: return "not schurian";
    case ErrorKind::not_wreath: return "not a generalized wreath product";
    case ErrorKind::section_not_preserved: return "section not preserved";
    case ErrorKind::precondition_failed: return "precondition failed";
    case ErrorKind::parse_error: return "parse error";
    case ErrorKind::io_error: return "i/o error";
  }
  return "error";
}

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

GroupSpec::GroupSpec() {
  auto d = std::make_shared<Data>();
  d->prefix = {1};
  d->coords = {};
  d->add = {0};
  d->neg = {0};
  d_ = std::move(d);
}

GroupSpec GroupSpec::make(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(), [](auto& a, auto& b) { return a.prime < b.prime; });
  long order = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (!is_prime(f.prime)) throw Error(ErrorKind::invalid_group, std::to_string(f.prime) + " is not prime");
    if (f.rank < 1) throw Error(ErrorKind::invalid_group, "rank must be at least 1");
    if (i && factors[i - 1].prime == f.prime)
      throw Error(ErrorKind::invalid_group, "prime " + std::to_string(f.prime) + " repeated");
    for (int r = 0; r < f.rank; ++r) {
      order *= f.prime;
      if (order > static_cast<long>(kMaxOrder))
        throw Error(ErrorKind::invalid_group, "order exceeds " + std::to_string(kMaxOrder));
    }
  }
  auto d = std::make_shared<Data>();
  d->factors = factors;
  d->order = static_cast<unsigned>(order);
  d->prefix = {1};
  for (std::size_t f = 0; f < factors.size(); ++f) {
    d->block_start.push_back(static_cast<int>(d->coord_prime.size()));
    for (int r = 0; r < factors[f].rank; ++r) {
      d->coord_prime.push_back(factors[f].prime);
      d->coord_factor.push_back(static_cast<int>(f));
      d->prefix.push_back(d->prefix.back() * factors[f].prime);
    }
  }
  const unsigned n = d->order;
  const int nc = static_cast<int>(d->coord_prime.size());
  d->coords.resize(static_cast<std::size_t>(n) * nc);
  for (unsigned g = 0; g < n; ++g) {
    unsigned x = g;
    for (int j = 0; j < nc; ++j) {
      d->coords[g * nc + j] = static_cast<std::uint8_t>(x % d->coord_prime[j]);
      x /= d->coord_prime[j];
    }
  }
  d->add.resize(static_cast<std::size_t>(n) * n);
  d->neg.resize(n);
  for (unsigned a = 0; a < n; ++a) {
    unsigned ng = 0;
    for (int j = 0; j < nc; ++j) {
      int p = d->coord_prime[j];
      ng += ((p - d->coords[a * nc + j]) % p) * d->prefix[j];
    }
    d->neg[a] = static_cast<std::uint8_t>(ng);
    for (unsigned b = 0; b < n; ++b) {
      unsigned s = 0;
      for (int j = 0; j < nc; ++j) {
        int p = d->coord_prime[j];
        s += ((d->coords[a * nc + j] + d->coords[b * nc + j]) % p) * d->prefix[j];
      }
      d->add[a * n + b] = static_cast<std::uint8_t>(s);
    }
  }
  GroupSpec g;
  g.d_ = std::move(d);
  return g;
}

GroupSpec GroupSpec::parse(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::invalid_group, "empty group string");
  std::vector<Factor> out;
  std::size_t pos = 0;
  auto read_int = [&](const char* what) {
    std::size_t start = pos;
    long v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      v = v * 10 + (text[pos] - '0');
      if (v > 1000000) throw Error(ErrorKind::invalid_group, "number too large in '" + std::string(text) + "'");
      ++pos;
    }
    if (pos == start) throw Error(ErrorKind::invalid_group, std::string("expected ") + what + " in '" + std::string(text) + "'");
    return static_cast<int>(v);
  };
  while (true) {
    Factor f{read_int("prime"), 1};
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      f.rank = read_int("rank");
    }
    out.push_back(f);
    if (pos == text.size()) break;
    if (text[pos] != 'x') throw Error(ErrorKind::invalid_group, "unexpected character in '" + std::string(text) + "'");
    ++pos;
  }
  return make(std::move(out));
}

std::vector<int> GroupSpec::coords(Elem g) const {
  std::vector<int> c(num_coords());
  for (int j = 0; j < num_coords(); ++j) c[j] = coord(g, j);
  return c;
}

Elem GroupSpec::index(const std::vector<int>& c) const {
  if (static_cast<int>(c.size()) != num_coords()) throw Error(ErrorKind::precondition_failed, "coordinate vector length");
  Elem g = 0;
  for (int j = 0; j < num_coords(); ++j) {
    int p = coord_prime(j);
    g += static_cast<Elem>(((c[j] % p) + p) % p) * prefix(j);
  }
  return g;
}

Elem GroupSpec::mul(long k, Elem a) const {
  Elem g = 0;
  for (int j = 0; j < num_coords(); ++j) {
    long p = coord_prime(j);
    g += static_cast<Elem>(((k % p) * coord(a, j) % p + p) % p) * prefix(j);
  }
  return g;
}

unsigned GroupSpec::element_order(Elem a) const {
  unsigned o = 1;
  for (const auto& f : factors()) {
    bool nz = false;
    for (int j = 0; j < num_coords(); ++j)
      if (coord_prime(j) == f.prime && coord(a, j) != 0) nz = true;
    if (nz) o *= f.prime;
  }
  return o;
}

ElementSet GroupSpec::component(int prime) const {
  ElementSet s;
  for (Elem g = 0; g < order(); ++g) {
    bool ok = true;
    for (int j = 0; j < num_coords() && ok; ++j)
      if (coord_prime(j) != prime && coord(g, j) != 0) ok = false;
    if (ok) s.insert(g);
  }
  return s;
}

std::string GroupSpec::to_string() const {
  if (factors().empty()) return "1";
  std::string s;
  for (const auto& f : factors()) {
    if (!s.empty()) s += 'x';
    s += std::to_string(f.prime);
    if (f.rank > 1) s += '^' + std::to_string(f.rank);
  }
  return s;
}

Element::Element(GroupSpec g, Elem index) : g_(std::move(g)), idx_(index) {
  if (index >= g_.order()) throw Error(ErrorKind::precondition_failed, "element index out of range");
}

Element::Element(GroupSpec g, const std::vector<int>& coords) : g_(std::move(g)), idx_(g_.index(coords)) {}

Element operator+(const Element& a, const Element& b) {
  if (!(a.g_ == b.g_)) throw Error(ErrorKind::group_mismatch, a.g_.to_string() + " vs " + b.g_.to_string());
  return Element(a.g_, a.g_.add(a.idx_, b.idx_));
}

Element operator-(const Element& a) { return Element(a.g_, a.g_.neg(a.idx_)); }

// ---------------------------------------------------------------- subgroups

Subgroup Subgroup::span(const GroupSpec& g, const std::vector<Elem>& gens) {
  Subgroup s;
  s.g_ = g;
  s.members_.insert(0);
  std::deque<Elem> queue{0};
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (Elem y : gens) {
      if (y >= g.order()) throw Error(ErrorKind::precondition_failed, "generator out of range");
      Elem z = g.add(x, y);
      if (!s.members_.contains(z)) {
        s.members_.insert(z);
        queue.push_back(z);
      }
    }
  }
  // Projections of the generators to each prime block span the block part.
  for (std::size_t f = 0; f < g.factors().size(); ++f) {
    const int p = g.factors()[f].prime, start = g.block_start(static_cast<int>(f)), n = g.factors()[f].rank;
    linalg::Mat rows;
    for (Elem y : gens) {
      std::vector<int> r(n);
      bool nz = false;
      for (int j = 0; j < n; ++j) {
        r[j] = g.coord(y, start + j);
        nz |= r[j] != 0;
      }
      if (nz) rows.push_back(r);
    }
    linalg::rref(rows, p);
    for (auto& r : rows) {
      std::vector<int> c(g.num_coords(), 0);
      int piv = -1;
      for (int j = 0; j < n; ++j) {
        c[start + j] = r[j];
        if (piv < 0 && r[j]) piv = start + j;
      }
      s.basis_.push_back(g.index(c));
      s.pivots_.push_back(piv);
    }
  }
  return s;
}

Subgroup Subgroup::from_set(const GroupSpec& g, const ElementSet& members) {
  if (!members.contains(0)) throw Error(ErrorKind::not_a_subgroup, "identity missing");
  auto v = members.elements();
  for (Elem a : v) {
    if (a >= g.order()) throw Error(ErrorKind::not_a_subgroup, "element out of range");
    for (Elem b : v)
      if (!members.contains(g.add(a, b)))
        throw Error(ErrorKind::not_a_subgroup, "not closed: " + std::to_string(a) + "+" + std::to_string(b));
  }
  return span(g, v);
}

Subgroup Subgroup::whole(const GroupSpec& g) {
  std::vector<Elem> gens;
  for (int j = 0; j < g.num_coords(); ++j) gens.push_back(g.basis(j));
  return span(g, gens);
}

std::string Subgroup::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) s += ',';
    for (int c : g_.coords(basis_[i])) s += std::to_string(c);
  }
  return s + ">";
}

Subgroup operator+(const Subgroup& a, const Subgroup& b) {
  if (!(a.group() == b.group())) throw Error(ErrorKind::group_mismatch, "subgroup sum");
  auto gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return Subgroup::span(a.group(), gens);
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (!(a.group() == b.group())) throw Error(ErrorKind::group_mismatch, "subgroup intersection");
  return Subgroup::span(a.group(), (a.members() & b.members()).elements());
}

std::vector<Subgroup> enumerate_subgroups(const GroupSpec& g) {
  // Subspaces of each prime component, then all direct sums.
  std::vector<std::vector<Subgroup>> per_prime;
  for (const auto& f : g.factors()) {
    ElementSet comp = g.component(f.prime);
    std::vector<Subgroup> found{Subgroup::trivial(g)};
    std::unordered_set<ElementSet, ElementSetHash> seen{found[0].members()};
    for (std::size_t i = 0; i < found.size(); ++i) {
      ElementSet rest = comp - found[i].members();
      rest.for_each([&](unsigned x) {
        auto gens = found[i].basis();
        gens.push_back(x);
        Subgroup s = Subgroup::span(g, gens);
        if (seen.insert(s.members()).second) found.push_back(s);
      });
    }
    per_prime.push_back(std::move(found));
  }
  std::vector<Subgroup> all{Subgroup::trivial(g)};
  for (const auto& list : per_prime) {
    std::vector<Subgroup> next;
    for (const auto& a : all)
      for (const auto& b : list) next.push_back(a + b);
    all = std::move(next);
  }
  std::sort(all.begin(), all.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return lex_less(a.members(), b.members());
  });
  return all;
}

Subgroup complement(const Subgroup& u) {
  const GroupSpec& g = u.group();
  std::vector<bool> pivot(g.num_coords(), false);
  for (int p : u.pivots()) pivot[p] = true;
  std::vector<Elem> gens;
  for (int j = 0; j < g.num_coords(); ++j)
    if (!pivot[j]) gens.push_back(g.basis(j));
  return Subgroup::span(g, gens);
}

Subgroup complement_in(const Subgroup& l, const Subgroup& u) {
  if (!l.subset_of(u)) throw Error(ErrorKind::not_a_section, "lower subgroup not contained in upper");
  std::vector<Elem> chosen;
  Subgroup cur = l;
  for (Elem b : u.basis()) {
    if (cur.contains(b)) continue;
    chosen.push_back(b);
    auto gens = cur.basis();
    gens.push_back(b);
    cur = Subgroup::span(u.group(), gens);
  }
  return Subgroup::span(u.group(), chosen);
}

// ---------------------------------------------------------------- sections

Section::Section(Subgroup upper, Subgroup lower) : upper_(std::move(upper)), lower_(std::move(lower)) {
  if (!(upper_.group() == lower_.group())) throw Error(ErrorKind::group_mismatch, "section subgroups");
  if (!lower_.subset_of(upper_)) throw Error(ErrorKind::not_a_section, "lower subgroup not contained in upper");
  const GroupSpec& g = upper_.group();
  Subgroup v = complement_in(lower_, upper_);
  const auto& vb = v.basis();
  std::vector<Factor> qf;
  for (std::size_t i = 0; i < vb.size(); ++i) {
    int p = g.coord_prime(v.pivots()[i]);
    if (!qf.empty() && qf.back().prime == p) ++qf.back().rank;
    else qf.push_back({p, 1});
  }
  quotient_ = qf.empty() ? GroupSpec() : GroupSpec::make(qf);
  proj_.assign(g.order(), -1);
  lift_.assign(quotient_.order(), 0);
  const auto lmem = lower_.members().elements();
  for (Elem q = 0; q < quotient_.order(); ++q) {
    Elem d = 0;
    for (std::size_t i = 0; i < vb.size(); ++i) d = g.add(d, g.mul(quotient_.coord(q, static_cast<int>(i)), vb[i]));
    Elem best = g.order();
    for (Elem l : lmem) {
      Elem x = g.add(d, l);
      proj_[x] = static_cast<int>(q);
      best = std::min(best, x);
    }
    lift_[q] = best;
  }
}

Section Section::whole(const GroupSpec& g) { return Section(Subgroup::whole(g), Subgroup::trivial(g)); }

Elem Section::project(Elem g) const {
  if (g >= proj_.size() || proj_[g] < 0) throw Error(ErrorKind::not_a_section, "element outside the upper subgroup");
  return static_cast<Elem>(proj_[g]);
}

ElementSet Section::project(const ElementSet& s) const {
  ElementSet out;
  s.for_each([&](unsigned x) { out.insert(project(x)); });
  return out;
}

ElementSet Section::preimage(const ElementSet& qs) const {
  ElementSet out;
  upper_.members().for_each([&](unsigned x) {
    if (qs.contains(static_cast<unsigned>(proj_[x]))) out.insert(x);
  });
  return out;
}

std::string Section::to_string() const { return upper_.to_string() + "/" + lower_.to_string(); }

// ---------------------------------------------------------------- automorphisms

GroupAut GroupAut::identity(const GroupSpec& g) {
  std::vector<Elem> im;
  for (int j = 0; j < g.num_coords(); ++j) im.push_back(g.basis(j));
  return from_images(g, im);
}

GroupAut GroupAut::from_images(const GroupSpec& g, const std::vector<Elem>& basis_images) {
  if (static_cast<int>(basis_images.size()) != g.num_coords())
    throw Error(ErrorKind::precondition_failed, "wrong number of basis images");
  GroupAut a;
  a.g_ = g;
  a.images_ = basis_images;
  a.table_.assign(g.order(), 0);
  for (int j = 0; j < g.num_coords(); ++j) {
    Elem v = basis_images[j];
    if (v >= g.order() || v == 0 || g.element_order(v) != static_cast<unsigned>(g.coord_prime(j)))
      throw Error(ErrorKind::precondition_failed, "basis image has wrong order");
    const unsigned lo = g.prefix(j), p = g.coord_prime(j);
    for (unsigned c = 1; c < p; ++c)
      for (unsigned low = 0; low < lo; ++low)
        a.table_[low + c * lo] = static_cast<point_t>(g.add(a.table_[low], g.mul(c, v)));
  }
  std::vector<bool> seen(g.order());
  for (auto x : a.table_) {
    if (seen[x]) throw Error(ErrorKind::precondition_failed, "basis images are linearly dependent");
    seen[x] = true;
  }
  return a;
}

GroupAut GroupAut::from_perm(const GroupSpec& g, const Perm& p) {
  if (p.degree() != g.order()) throw Error(ErrorKind::precondition_failed, "permutation degree");
  std::vector<Elem> im;
  for (int j = 0; j < g.num_coords(); ++j) im.push_back(p(g.basis(j)));
  GroupAut a = from_images(g, im);
  for (Elem x = 0; x < g.order(); ++x)
    if (a.table_[x] != p(x)) throw Error(ErrorKind::precondition_failed, "permutation is not a group automorphism");
  return a;
}

GroupAut GroupAut::from_matrices(const GroupSpec& g, const std::vector<std::vector<std::vector<int>>>& blocks) {
  if (blocks.size() != g.factors().size()) throw Error(ErrorKind::precondition_failed, "number of blocks");
  std::vector<Elem> im;
  for (std::size_t f = 0; f < blocks.size(); ++f) {
    const int n = g.factors()[f].rank, start = g.block_start(static_cast<int>(f));
    if (static_cast<int>(blocks[f].size()) != n) throw Error(ErrorKind::precondition_failed, "block size");
    for (int col = 0; col < n; ++col) {
      std::vector<int> c(g.num_coords(), 0);
      for (int row = 0; row < n; ++row) {
        if (static_cast<int>(blocks[f][row].size()) != n) throw Error(ErrorKind::precondition_failed, "block size");
        c[start + row] = blocks[f][row][col];
      }
      im.push_back(g.index(c));
    }
  }
  return from_images(g, im);
}

std::vector<std::vector<int>> GroupAut::matrix(int f) const {
  const int n = g_.factors()[f].rank, start = g_.block_start(f);
  std::vector<std::vector<int>> m(n, std::vector<int>(n));
  for (int col = 0; col < n; ++col)
    for (int row = 0; row < n; ++row) m[row][col] = g_.coord(images_[start + col], start + row);
  return m;
}

Perm GroupAut::to_perm() const { return Perm(table_); }

ElementSet GroupAut::apply(const ElementSet& s) const {
  ElementSet out;
  s.for_each([&](unsigned x) { out.insert(table_[x]); });
  return out;
}

GroupAut GroupAut::then(const GroupAut& b) const {
  std::vector<Elem> im;
  for (Elem v : images_) im.push_back(b(v));
  return from_images(g_, im);
}

GroupAut GroupAut::inverse() const { return from_perm(g_, to_perm().inverse()); }

double aut_order_estimate(const GroupSpec& g) {
  double o = 1;
  for (const auto& f : g.factors())
    for (int i = 0; i < f.rank; ++i) o *= std::pow(f.prime, f.rank) - std::pow(f.prime, i);
  return o;
}

}  // namespace sring
