#include <catch_amalgamated.hpp>

#include "properties.hpp"
#include "sring/catalog.hpp"
#include "sring/morphisms.hpp"

using namespace sring;

namespace {

const std::vector<Catalog>& catalogs() {
  static const std::vector<Catalog> cats = [] {
    std::vector<Catalog> out;
    for (const char* s : {"2^2", "2x3", "2^3", "3^2", "2^2x3", "2^4", "5^2"})
      out.push_back(enumerate_srings(GroupSpec::parse(s), Filter::all));
    out.push_back(enumerate_srings(GroupSpec::parse("3^3"), Filter::p_srings));
    return out;
  }();
  return cats;
}

void run(const char* name, props::Tally (*check)(const Catalog&), std::size_t max_order = 128) {
  std::size_t checked = 0;
  for (const auto& c : catalogs()) {
    if (c.group.order() > max_order) continue;
    const auto t = check(c);
    INFO(name << " over " << c.group.to_string());
    for (const auto& v : t.violations) FAIL_CHECK(v);
    checked += t.checked;
  }
  CHECK(checked > 0);
}

}  // namespace

TEST_CASE("multiplier images of cells are cells", "[properties]") { run("multipliers", props::multipliers); }

TEST_CASE("a cell of size |G|/p forces a wreath product", "[properties]") {
  run("big cell", props::big_cell_wreath);
}

TEST_CASE("cells and index-p A-subgroups", "[properties]") { run("index p", props::index_p_cells); }

TEST_CASE("a group-ring factor forces a tensor product", "[properties]") { run("tensor", props::tensor_forcing); }

TEST_CASE("algebraic isomorphisms preserve wreath decompositions", "[properties]") {
  run("wreath", [](const Catalog& c) { return props::wreath_preservation(c); }, 27);
}

TEST_CASE("index-p thin radical structure", "[properties]") { run("thin", props::thin_index_p); }

TEST_CASE("quotients of cyclotomic S-rings are cyclotomic", "[properties]") {
  run("cyclotomic quotient", props::quotient_cyclotomic);
}

TEST_CASE("quotients of schurian S-rings are schurian", "[properties]") {
  run("schurian quotient", [](const Catalog& c) { return props::quotient_schurian(c); }, 16);
}

TEST_CASE("Cayley minimality and cyclotomicity over C3^3", "[properties]") {
  const auto& cat = catalogs().back();
  REQUIRE(cat.group == GroupSpec::parse("3^3"));
  const auto wr3 = table1_templates(3).at(4).second;  // ZC3 wr ZC3 wr ZC3
  for (const auto& e : cat.entries) {
    CHECK(is_cyclotomic(e.ring));
    CHECK(is_cayley_minimal(e.ring) == !cayley_isomorphic(e.ring, wr3));
  }
}
