#pragma once

// Enumeration of S-rings up to Cayley isomorphism, and catalog files.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sring/groups.hpp"
#include "sring/sring.hpp"

namespace sring {

enum class Filter { all, p_srings };
const char* to_string(Filter f);
Filter parse_filter(const std::string& s);

enum class EnumerationMethod {
  automatic,
  // Refine from the rank-2 S-ring by splitting one cell at a time.
  split_search,
  // p-S-rings only: extend each p-S-ring on an index-p subgroup.
  p_extension,
};

struct EnumerateOptions {
  EnumerationMethod method = EnumerationMethod::automatic;
  unsigned max_order = 0;        // 0: 27 for all, 81 for p-srings
  std::size_t node_budget = 0;   // closures; 0 = unlimited
  double seconds = 0;            // wall clock; 0 = unlimited
  std::string checkpoint_path;   // split search only
  double checkpoint_interval = 30;
  std::size_t symmetry_limit = 200000;
  std::function<void(const std::string&)> log;
};

struct CatalogEntry {
  unsigned id = 0;
  SRing ring;
  std::vector<std::uint8_t> canon;
  std::string label;
  bool decomposable = false;
  unsigned thin_order = 1;
  // Filled by CI annotation; empty when not computed.
  std::string ci, ci_method;
};

struct Catalog {
  GroupSpec group;
  Filter filter = Filter::all;
  int version = 1;
  std::vector<CatalogEntry> entries;

  std::string digest() const;
  // Index of the entry Cayley isomorphic to a, if any.
  std::optional<std::size_t> find(const SRing& a) const;
};

// Representatives of all Cayley-isomorphism classes, sorted by
// (rank, canonical form). Throws ResourceLimit when a bound is hit.
Catalog enumerate_srings(const GroupSpec& g, Filter filter, const EnumerateOptions& opts = {});

// Fills label-independent annotations (decomposable, thin radical) and ids.
void annotate(Catalog& c);

void save_catalog(const Catalog& c, std::ostream& out);
// Validates every entry and the digest.
Catalog load_catalog(std::istream& in);
std::string entry_line(const CatalogEntry& e);

// Rows of the p-S-ring classification over C_p^3 (p odd).
struct Table1Row {
  int row;
  std::string label;      // constructor expression
  bool decomposable;      // expected
  unsigned thin_order;    // expected
  std::optional<std::size_t> entry;  // matching catalog entry
  unsigned rank = 0;
};
struct Table1Result {
  int p;
  Catalog catalog;
  std::vector<Table1Row> rows;
  std::vector<std::string> mismatches;
  // p-S-rings over C_p^2, used as the recursion base.
  std::vector<std::string> rank2_classes;
};
// Throws precondition_failed unless p is 3 or 5.
Table1Result table1(int p, const EnumerateOptions& opts = {});
std::vector<std::pair<std::string, SRing>> table1_templates(int p);

}  // namespace sring
