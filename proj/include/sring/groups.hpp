#pragma once

// Finite groups of the form C_{p1}^{n1} x ... x C_{pk}^{nk} with distinct primes.
//
// Elements are mixed-radix indices over the coordinate vector; coordinate 0
// is least significant, so the indices below prefix(j) are exactly the span
// of the first j basis vectors. Coordinates are grouped by prime, primes
// ascending.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sring/element_set.hpp"
#include "sring/perm.hpp"

namespace sring {

struct Factor {
  int prime;
  int rank;
  friend bool operator==(const Factor&, const Factor&) = default;
};

class GroupSpec {
 public:
  // The trivial group.
  GroupSpec();
  static GroupSpec make(std::vector<Factor> factors);
  // Accepts "3^3", "2^2x3", "5"; whitespace and repeated primes are rejected.
  static GroupSpec parse(std::string_view text);

  const std::vector<Factor>& factors() const { return d_->factors; }
  unsigned order() const { return d_->order; }
  int num_coords() const { return static_cast<int>(d_->coord_prime.size()); }
  int coord_prime(int j) const { return d_->coord_prime[j]; }
  unsigned prefix(int j) const { return d_->prefix[j]; }
  // First coordinate of the block for factor f.
  int block_start(int f) const { return d_->block_start[f]; }
  int factor_of_coord(int j) const { return d_->coord_factor[j]; }

  int coord(Elem g, int j) const { return d_->coords[g * num_coords() + j]; }
  std::vector<int> coords(Elem g) const;
  Elem index(const std::vector<int>& coords) const;
  Elem basis(int j) const { return d_->prefix[j]; }

  Elem add(Elem a, Elem b) const { return d_->add[a * d_->order + b]; }
  Elem neg(Elem a) const { return d_->neg[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(long k, Elem a) const;
  unsigned element_order(Elem a) const;

  ElementSet all() const { return ElementSet::range(0, order()); }
  // Elements whose coordinates outside the block of this prime vanish.
  ElementSet component(int prime) const;
  bool is_p_group() const { return d_->factors.size() == 1; }

  std::string to_string() const;
  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.d_ == b.d_ || a.factors() == b.factors(); }

 private:
  struct Data {
    std::vector<Factor> factors;
    unsigned order = 1;
    std::vector<int> coord_prime, coord_factor, block_start;
    std::vector<unsigned> prefix;
    std::vector<std::uint8_t> coords, add, neg;
  };
  std::shared_ptr<const Data> d_;
};

// Convenience wrapper pairing an index with its group.
class Element {
 public:
  Element(GroupSpec g, Elem index);
  Element(GroupSpec g, const std::vector<int>& coords);
  Elem index() const { return idx_; }
  std::vector<int> coords() const { return g_.coords(idx_); }
  const GroupSpec& group() const { return g_; }
  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a);
  friend bool operator==(const Element& a, const Element& b) { return a.g_ == b.g_ && a.idx_ == b.idx_; }

 private:
  GroupSpec g_;
  Elem idx_;
};

class Subgroup {
 public:
  static Subgroup span(const GroupSpec& g, const std::vector<Elem>& gens);
  // Throws not_a_subgroup unless the set is closed under addition.
  static Subgroup from_set(const GroupSpec& g, const ElementSet& members);
  static Subgroup trivial(const GroupSpec& g) { return span(g, {}); }
  static Subgroup whole(const GroupSpec& g);

  const GroupSpec& group() const { return g_; }
  const ElementSet& members() const { return members_; }
  unsigned order() const { return members_.size(); }
  bool contains(Elem x) const { return members_.contains(x); }
  bool subset_of(const Subgroup& o) const { return members_.subset_of(o.members_); }
  // Reduced echelon basis, prime blocks ascending; pivot = lowest nonzero coordinate.
  const std::vector<Elem>& basis() const { return basis_; }
  // Pivot coordinate of each basis vector.
  const std::vector<int>& pivots() const { return pivots_; }
  std::string to_string() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }

 private:
  GroupSpec g_;
  ElementSet members_;
  std::vector<Elem> basis_;
  std::vector<int> pivots_;
};

Subgroup operator+(const Subgroup& a, const Subgroup& b);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

// All subgroups sorted by (order, member list).
std::vector<Subgroup> enumerate_subgroups(const GroupSpec& g);

// Complement spanned by the standard basis vectors at non-pivot coordinates.
Subgroup complement(const Subgroup& u);
// A complement V of l inside u (u = V + l, V meets l trivially), chosen
// greedily from the echelon basis of u.
Subgroup complement_in(const Subgroup& l, const Subgroup& u);

// A section U/L with its quotient group. Quotient coordinates are the
// coefficients along complement_in(L, U); lift() returns the least index in
// the coset.
class Section {
 public:
  Section(Subgroup upper, Subgroup lower);
  static Section whole(const GroupSpec& g);

  const GroupSpec& ambient() const { return upper_.group(); }
  const Subgroup& upper() const { return upper_; }
  const Subgroup& lower() const { return lower_; }
  const GroupSpec& quotient() const { return quotient_; }
  unsigned order() const { return quotient_.order(); }
  bool is_trivial() const { return upper_ == lower_; }

  bool contains(Elem g) const { return upper_.contains(g); }
  Elem project(Elem g) const;
  ElementSet project(const ElementSet& s) const;
  Elem lift(Elem q) const { return lift_[q]; }
  ElementSet preimage(const ElementSet& qs) const;
  std::string to_string() const;

  friend bool operator==(const Section& a, const Section& b) {
    return a.upper_ == b.upper_ && a.lower_ == b.lower_;
  }

 private:
  Subgroup upper_, lower_;
  GroupSpec quotient_;
  std::vector<int> proj_;
  std::vector<Elem> lift_;
};

// Automorphism of a GroupSpec, determined by the images of the standard basis.
class GroupAut {
 public:
  static GroupAut identity(const GroupSpec& g);
  // Throws precondition_failed unless the images define an automorphism.
  static GroupAut from_images(const GroupSpec& g, const std::vector<Elem>& basis_images);
  static GroupAut from_perm(const GroupSpec& g, const Perm& p);
  // Block matrices act on column vectors; column j is the image of basis vector j.
  static GroupAut from_matrices(const GroupSpec& g, const std::vector<std::vector<std::vector<int>>>& blocks);

  const GroupSpec& group() const { return g_; }
  Elem operator()(Elem x) const { return table_[x]; }
  const std::vector<Elem>& basis_images() const { return images_; }
  std::vector<std::vector<int>> matrix(int factor) const;
  Perm to_perm() const;
  ElementSet apply(const ElementSet& s) const;

  // Apply this first, then b.
  GroupAut then(const GroupAut& b) const;
  GroupAut inverse() const;

  friend bool operator==(const GroupAut& a, const GroupAut& b) { return a.images_ == b.images_; }
  friend bool operator<(const GroupAut& a, const GroupAut& b) { return a.images_ < b.images_; }

 private:
  GroupSpec g_;
  std::vector<Elem> images_;
  std::vector<point_t> table_;
};

// Order of Aut(G) = product of |GL(n_i, p_i)|, as a double estimate and an
// exact value when it fits.
double aut_order_estimate(const GroupSpec& g);

}  // namespace sring
