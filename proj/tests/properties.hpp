#pragma once

// Structural invariants of S-rings, checked over whole catalogs. Shared by the
// unit tests and the acceptance binary.

#include <string>
#include <vector>

#include "sring/catalog.hpp"

namespace props {

struct Tally {
  std::size_t checked = 0;
  std::vector<std::string> violations;
  void fail(std::string what) { violations.push_back(std::move(what)); }
  bool ok() const { return checked > 0 && violations.empty(); }
};

// X^(m) is a cell for every cell X and m coprime to |G|.
Tally multipliers(const sring::Catalog& c);
// p-S-rings: a cell of size |G|/p makes A a wreath product over an A-subgroup
// of index p (U = L).
Tally big_cell_wreath(const sring::Catalog& c);
// p-S-rings, U an A-subgroup of index p: every cell lies in a U-coset, and
// |O_theta cap U| |X| > |G|/p implies O_theta cap rad(X) > 1.
Tally index_p_cells(const sring::Catalog& c);
// Complementary A-subgroups G1, G2 with A_G1 or A_G2 the group ring give
// A = A_G1 (x) A_G2.
Tally tensor_forcing(const sring::Catalog& c);
// An algebraic isomorphism maps a wreath section to a wreath section.
Tally wreath_preservation(const sring::Catalog& c, std::size_t iso_limit = 200);
// p-S-rings with |G : O_theta| = p: the form ZO wr_{O/L} Z(G/L), cyclotomic,
// Cayley minimal and CI.
Tally thin_index_p(const sring::Catalog& c);
// A = cyc(M, G) gives A_S = cyc(M^S, S).
Tally quotient_cyclotomic(const sring::Catalog& c);
// A = V(K, G) gives A_S = V(K^S, S), with K = Aut(A).
Tally quotient_schurian(const sring::Catalog& c, std::size_t max_aut = 50000);

}  // namespace props
