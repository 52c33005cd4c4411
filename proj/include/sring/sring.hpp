#pragma once

// Schur rings over GroupSpec groups, stored by their basic sets (cells).

#include <cstdint>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "sring/groups.hpp"

namespace sring {

class SRing {
 public:
  // Validates the S-ring axioms; throws Error with a witness on failure.
  // Cells are reordered by (size, least element).
  static SRing from_cells(const GroupSpec& g, const std::vector<ElementSet>& cells);
  // labels[g] names the cell of g; any distinct integers.
  static SRing from_labels(const GroupSpec& g, const std::vector<int>& labels);

  const GroupSpec& group() const { return d_->group; }
  unsigned order() const { return d_->group.order(); }
  unsigned rank() const { return static_cast<unsigned>(d_->cells.size()); }
  const std::vector<ElementSet>& cells() const { return d_->cells; }
  const ElementSet& cell(unsigned i) const { return d_->cells[i]; }
  unsigned cell_of(Elem g) const { return d_->cell_of[g]; }
  const std::vector<std::uint16_t>& cell_index() const { return d_->cell_of; }
  unsigned inverse_cell(unsigned c) const { return d_->inverse[c]; }
  bool is_union_of_cells(const ElementSet& s) const;

  // X*Y = sum over Z of c^Z_{X,Y} Z, as sparse (Z, c) pairs sorted by Z.
  const std::vector<std::pair<std::uint16_t, std::uint16_t>>& product(unsigned x, unsigned y) const;
  unsigned structure_constant(unsigned x, unsigned y, unsigned z) const;

  bool is_p_sring() const;

  friend bool operator==(const SRing& a, const SRing& b) {
    return a.group() == b.group() && a.cells() == b.cells();
  }

 private:
  struct Data {
    GroupSpec group;
    std::vector<ElementSet> cells;
    std::vector<std::uint16_t> cell_of;
    std::vector<unsigned> inverse;
    mutable std::once_flag constants_once;
    mutable std::vector<std::vector<std::pair<std::uint16_t, std::uint16_t>>> constants;
  };
  std::shared_ptr<const Data> d_;
};

// Throws Error (not_a_partition, identity_not_a_cell, not_inverse_closed,
// not_closed) describing the first violated axiom.
void validate_partition(const GroupSpec& g, const std::vector<ElementSet>& cells);

// {g : X + g = X}.
Subgroup radical(const SRing& a, unsigned cell);
// Union of the singleton cells.
Subgroup thin_radical(const SRing& a);
std::vector<Subgroup> a_subgroups(const SRing& a);
// Pairs L <= U of A-subgroups, including U = L.
std::vector<Section> a_sections(const SRing& a);
bool is_a_subgroup(const SRing& a, const Subgroup& u);
bool is_a_section(const SRing& a, const Section& s);
// The cell X^(m) = {m x : x in X}; m must be coprime to |G|.
unsigned power_map_cell(const SRing& a, unsigned cell, long m);

// Coarsest S-ring whose partition refines the given labelling (identity is
// always split off).
SRing schur_closure(const GroupSpec& g, const std::vector<int>& labels);

}  // namespace sring
