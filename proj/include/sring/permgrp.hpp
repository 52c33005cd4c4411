#pragma once

// Permutation groups with a deterministic Schreier-Sims stabilizer chain.

#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sring/groups.hpp"
#include "sring/perm.hpp"

namespace sring {

using BigInt = boost::multiprecision::cpp_int;

class PermGroup {
 public:
  explicit PermGroup(unsigned degree = 0);
  // base_prefix fixes the first base points; further base points are the
  // smallest points moved by the generator that needs them.
  PermGroup(unsigned degree, std::vector<Perm> gens, const std::vector<unsigned>& base_prefix = {});
  static PermGroup symmetric(unsigned n);

  unsigned degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  BigInt order() const;
  bool is_trivial() const { return gens_.empty(); }
  bool is_symmetric() const;
  bool contains(const Perm& p) const;
  bool contains(const PermGroup& h) const;
  friend bool operator==(const PermGroup& a, const PermGroup& b) {
    return a.order() == b.order() && a.contains(b);
  }
  std::vector<unsigned> base() const;

  std::vector<unsigned> orbit(unsigned x) const;
  // Orbits sorted by least point, each sorted.
  std::vector<std::vector<unsigned>> orbits() const;
  PermGroup stabilizer(unsigned x) const;

  // Throws ResourceLimit if the order exceeds limit. Sorted.
  std::vector<Perm> elements(std::size_t limit) const;
  Perm random_element(std::mt19937_64& rng) const;

 private:
  struct Level {
    unsigned base = 0;
    std::vector<Perm> gens;
    std::vector<int> tpos;
    std::vector<unsigned> orbit;
    std::vector<Perm> trans, trans_inv;
    std::vector<std::size_t> checked;
  };
  void add_level(unsigned base);
  void extend_orbit(std::size_t l);
  std::pair<Perm, std::size_t> strip(Perm h, std::size_t from) const;
  void build(const std::vector<unsigned>& base_prefix);

  unsigned degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Level> levels_;
};

// Translations x -> x + g.
PermGroup right_regular(const GroupSpec& g);
Perm translation(const GroupSpec& g, Elem by);
// Aut(G) from transvections and primitive-root scalings in each prime block.
PermGroup aut_group(const GroupSpec& g);

// Orbit label of every ordered pair (x, y) at index x*n + y, labels numbered
// by first occurrence.
std::vector<unsigned> pair_orbit_labels(const PermGroup& k);
std::vector<std::vector<unsigned>> orbits_pairs(const PermGroup& k);
bool two_equivalent(const PermGroup& a, const PermGroup& b);

inline PermGroup point_stabilizer(const PermGroup& k, unsigned x) { return k.stabilizer(x); }

// All subgroups M with h <= M <= k, h first. Throws ResourceLimit when the
// index |k : h| exceeds index_bound.
std::vector<PermGroup> subgroups_between(const PermGroup& h, const PermGroup& k, std::size_t index_bound);

// All subgroups of a small group k (trivial group first). Throws
// ResourceLimit when |k| exceeds order_bound.
std::vector<PermGroup> all_subgroups(const PermGroup& k, std::size_t order_bound);

// Representatives of the k-conjugacy classes of regular subgroups of k
// isomorphic to g; when k contains G_right its class comes first. Throws
// ResourceLimit when |k| exceeds order_bound
// (the full symmetric group is handled without enumeration).
std::vector<PermGroup> regular_subgroups(const PermGroup& k, const GroupSpec& g, std::size_t order_bound);

}  // namespace sring
