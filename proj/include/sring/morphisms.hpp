#pragma once

// Isomorphisms and automorphism groups of S-rings.
//
// Cayley isomorphisms are group automorphisms carrying cells to cells;
// combinatorial isomorphisms are bijections of G preserving the Cayley
// colouring (x, y) -> cell of y - x; algebraic isomorphisms are cell
// bijections preserving the structure constants.

#include <cstdint>
#include <optional>
#include <vector>

#include "sring/groups.hpp"
#include "sring/permgrp.hpp"
#include "sring/refine.hpp"
#include "sring/sring.hpp"

namespace sring {

struct AlgebraicIso {
  SRing source, target;
  std::vector<unsigned> map;  // cell i of source -> cell map[i] of target

  // Image of a union of source cells.
  ElementSet image(const ElementSet& s) const;
  AlgebraicIso inverse() const;
  friend bool operator==(const AlgebraicIso& a, const AlgebraicIso& b) { return a.map == b.map; }
};

// Cell map induced by a Cayley or combinatorial isomorphism f: X -> f(X) - f(0).
// Throws precondition_failed if f is not an isomorphism from a to b.
AlgebraicIso induced_algebraic_iso(const SRing& a, const SRing& b, const Perm& f);

// Cayley isomorphisms in lexicographic order of basis images, optionally
// restricted to those inducing the given cell map. Throws ResourceLimit when
// more than limit exist.
std::vector<GroupAut> cayley_isos(const SRing& a, const SRing& b, std::size_t limit,
                                  const std::vector<unsigned>* cell_map = nullptr);
std::optional<GroupAut> find_cayley_iso(const SRing& a, const SRing& b,
                                        const std::vector<unsigned>* cell_map = nullptr);
bool cayley_isomorphic(const SRing& a, const SRing& b);

// Aut_G(A) as a permutation group on G.
PermGroup cayley_auts(const SRing& a);
std::vector<GroupAut> cayley_aut_elements(const SRing& a, std::size_t limit);

ColorMatrix cayley_colors(const SRing& a);
// Aut(A) = G_right Aut(A)_e.
PermGroup scheme_aut(const SRing& a);
PermGroup scheme_aut_stabilizer(const SRing& a);

std::vector<AlgebraicIso> algebraic_isos(const SRing& a, const SRing& b, std::size_t limit);

// Combinatorial isomorphisms inducing phi; the first fixes the identity.
std::optional<Perm> find_combinatorial_iso(const AlgebraicIso& phi);
std::vector<Perm> combinatorial_isos(const AlgebraicIso& phi, std::size_t limit);

// f restricted to U/L; throws section_not_preserved unless f maps U onto U
// and L-cosets onto L-cosets, and f(0) lies in L.
Perm restrict(const Perm& f, const Section& s);
// Restrictions of the elements of delta that preserve s, deduplicated and sorted.
std::vector<Perm> delta_S(const std::vector<Perm>& delta, const Section& s);
bool preserves_section(const Perm& f, const Section& s);

Section algebraic_image(const AlgebraicIso& phi, const Section& s);

// std::nullopt when undecided within the bound.
std::optional<bool> is_2_minimal(const SRing& a, std::size_t index_bound = 10000);
std::optional<bool> is_cayley_minimal(const SRing& a, std::size_t order_bound = 100000);
bool is_cyclotomic(const SRing& a);
bool is_schurian(const SRing& a);

// Lexicographically least cell labelling over the Aut(G)-orbit of A; equal
// for two S-rings iff they are Cayley isomorphic.
std::vector<std::uint8_t> canonical_form(const SRing& a);
SRing canonical_representative(const SRing& a);

}  // namespace sring
