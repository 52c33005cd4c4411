#pragma once

// Individualization-refinement on complete edge-coloured digraphs.

#include <cstdint>
#include <optional>
#include <vector>

#include "sring/perm.hpp"
#include "sring/permgrp.hpp"

namespace sring {

struct ColorMatrix {
  unsigned n = 0;
  std::vector<std::uint16_t> c;
  unsigned at(unsigned x, unsigned y) const { return c[x * n + y]; }
};

// Generators of the stabilizer of v0 in the automorphism group of m.
PermGroup color_automorphisms_fixing(const ColorMatrix& m, unsigned v0);

// A colour-preserving bijection a -> b carrying a0 to b0, if any.
std::optional<Perm> color_isomorphism(const ColorMatrix& a, const ColorMatrix& b, unsigned a0, unsigned b0);

bool preserves_colors(const ColorMatrix& a, const ColorMatrix& b, const Perm& f);

}  // namespace sring
