#pragma once

// Standard constructions of S-rings and the generalized wreath product.

#include <vector>

#include "sring/groups.hpp"
#include "sring/permgrp.hpp"
#include "sring/sring.hpp"

namespace sring {

SRing group_ring(const GroupSpec& g);
// The rank-2 S-ring {e}, G \ {e}.
SRing trivial_sring(const GroupSpec& g);
// Orbits of the group generated by gens.
SRing cyclotomic(const GroupSpec& g, const std::vector<GroupAut>& gens);
// Orbits of the stabilizer of the identity in k; k must contain G_right.
SRing schurian(const GroupSpec& g, const PermGroup& k);

struct DirectProduct {
  GroupSpec group;
  // Embeddings of the factors; coordinates of the first factor precede those
  // of the second inside each prime block.
  std::vector<Elem> embed_first, embed_second;
};
DirectProduct direct_product(const GroupSpec& a, const GroupSpec& b);
SRing tensor(const SRing& a, const SRing& b);

// A_S; throws not_a_section unless U and L are A-subgroups.
SRing quotient(const SRing& a, const Section& s);
// A_U as an S-ring over the quotient group U/1.
SRing restriction(const SRing& a, const Subgroup& u);

// Every cell outside U has L inside its radical.
bool is_wreath(const SRing& a, const Section& s);
// A_U wr_S A_{G/L}: au lives on Section(U, 1).quotient(), aq on
// Section(G, L).quotient(). Throws not_wreath if the two parts disagree on S.
SRing wreath(const SRing& au, const SRing& aq, const Section& s);
// Sections U/L with |L| > 1 and U < G for which A is an S-wreath product.
std::vector<Section> decompositions(const SRing& a);
inline bool is_decomposable(const SRing& a) { return !decompositions(a).empty(); }

}  // namespace sring
