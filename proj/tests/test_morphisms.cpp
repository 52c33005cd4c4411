#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "sring/catalog.hpp"
#include "sring/construct.hpp"
#include "sring/error.hpp"
#include "sring/expr.hpp"
#include "sring/morphisms.hpp"

using namespace sring;

namespace {

SRing row(int r) { return table1_templates(3).at(r - 1).second; }

const Catalog& catalog8() {
  static const Catalog c = enumerate_srings(GroupSpec::parse("2^3"), Filter::all);
  return c;
}

}  // namespace

TEST_CASE("Cayley isomorphisms", "[morphisms]") {
  const auto g8 = GroupSpec::parse("2^3");
  CHECK(cayley_isos(group_ring(g8), group_ring(g8), 1000).size() == 168);
  // Cayley isomorphisms may permute cells; those fixing every cell form Aut_G(A).
  const auto a5 = row(5);
  std::size_t naive = 0;
  for (const auto& t : oracle::automorphisms(a5.group())) {
    bool ok = true;
    for (const auto& c : a5.cells()) {
      ElementSet img;
      for (Elem x = 0; x < 27; ++x)
        if (c.contains(x)) img.insert(t[x]);
      ok = ok && a5.cell(a5.cell_of(img.min())) == img;
    }
    naive += ok;
  }
  CHECK(cayley_isos(a5, a5, 1000).size() == naive);
  CHECK(naive == 216);
  std::vector<unsigned> id(a5.rank());
  for (unsigned i = 0; i < id.size(); ++i) id[i] = i;
  CHECK(cayley_isos(a5, a5, 1000, &id).size() == 27);
  REQUIRE(row(3).rank() == row(6).rank());
  CHECK(cayley_isos(row(3), row(6), 1000).empty());
  CHECK_FALSE(cayley_isomorphic(row(3), row(6)));
  CHECK_THROWS_AS(cayley_isos(group_ring(g8), group_ring(g8), 10), ResourceLimit);
}

TEST_CASE("Cayley automorphism groups", "[morphisms]") {
  CHECK(cayley_auts(group_ring(GroupSpec::parse("3^3"))).order() == 1);
  CHECK(cayley_auts(row(3)).order() == 9);
  CHECK(cayley_auts(row(5)).order() == 27);
  for (const auto& e : catalog8().entries) CHECK(cayley_auts(e.ring).order() == oracle::cayley_aut_order(e.ring));
  for (int r = 1; r <= 6; ++r) CHECK(cayley_auts(row(r)).order() == oracle::cayley_aut_order(row(r)));
}

TEST_CASE("scheme automorphism groups", "[morphisms]") {
  const auto g = GroupSpec::parse("3^3");
  CHECK(scheme_aut(group_ring(g)) == right_regular(g));
  const auto k6 = scheme_aut(row(6));
  CHECK(k6.order() == 81);
  CHECK(k6.stabilizer(0).order() == 3);
  CHECK(scheme_aut_stabilizer(row(6)).order() == 3);

  const auto w = build_expr("wr(Z,Z;U=<10>;L=<10>)", GroupSpec::parse("3^2"));
  CHECK(scheme_aut(w).order() == 81);
  CHECK(oracle::scheme_aut_order(w) == 81);
  for (const auto& e : catalog8().entries) {
    INFO(e.label);
    CHECK(scheme_aut(e.ring).order() == oracle::scheme_aut_order(e.ring));
  }
}

TEST_CASE("algebraic and combinatorial isomorphisms", "[morphisms]") {
  const auto g4 = GroupSpec::parse("2^2");
  const auto z4 = group_ring(g4);
  const auto isos = algebraic_isos(z4, z4, 1000);
  CHECK(isos.size() == 6);
  std::vector<unsigned> id(z4.rank());
  for (unsigned i = 0; i < id.size(); ++i) id[i] = i;
  CHECK(std::any_of(isos.begin(), isos.end(), [&](const AlgebraicIso& f) { return f.map == id; }));
  CHECK(algebraic_isos(z4, trivial_sring(g4), 100).empty());

  // Identity algebraic iso: the combinatorial isos are Aut(A).
  const auto a = row(6);
  const AlgebraicIso ida{a, a, [&] {
                           std::vector<unsigned> m(a.rank());
                           for (unsigned i = 0; i < m.size(); ++i) m[i] = i;
                           return m;
                         }()};
  CHECK(combinatorial_isos(ida, 1000).size() == 81);

  // Group rings: the algebraic iso of an automorphism psi is realized by G_right psi.
  const auto g8 = GroupSpec::parse("2^3");
  const auto z8 = group_ring(g8);
  const auto psi = GroupAut::from_matrices(g8, {{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}});
  const auto phi = induced_algebraic_iso(z8, z8, psi.to_perm());
  const auto combs = combinatorial_isos(phi, 1000);
  CHECK(combs.size() == 8);
  for (const auto& f : combs) {
    const auto t = translation(g8, f(0));
    CHECK(psi.to_perm() * t == f);
  }
  const auto f0 = find_combinatorial_iso(phi);
  REQUIRE(f0);
  CHECK((*f0)(0) == 0);
}

TEST_CASE("restriction to sections", "[morphisms]") {
  const auto g = GroupSpec::parse("3^3");
  const auto u = Subgroup::span(g, {g.index({1, 0, 0}), g.index({0, 1, 0})});
  const auto l = Subgroup::span(g, {g.index({1, 0, 0})});
  const Section s(u, l);
  CHECK(restrict(Perm(27), s).is_identity());
  const Elem by = g.index({0, 1, 0});
  const auto r = restrict(translation(g, by), s);
  CHECK(r == translation(s.quotient(), s.project(by)));
  // An automorphism moving L is rejected.
  const auto swap = GroupAut::from_matrices(g, {{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}});
  CHECK_FALSE(preserves_section(swap.to_perm(), s));
  CHECK_THROWS_AS(restrict(swap.to_perm(), s), Error);

  CHECK(delta_S({}, s).size() <= 1);
  const auto d = delta_S(cayley_auts(group_ring(g)).elements(10), s);
  REQUIRE(d.size() == 1);
  CHECK(d[0].is_identity());
  const Section trivial(u, u);
  for (const auto& p : delta_S(aut_group(g).elements(20000), trivial)) CHECK(p.is_identity());
}

TEST_CASE("minimality", "[morphisms]") {
  const auto g = GroupSpec::parse("3^3");
  CHECK(is_2_minimal(group_ring(g)) == true);
  CHECK(is_2_minimal(row(6)) == true);
  // ZU wr_{U/L} Z(G/L) with |L| = 3, |U| = 9 is Cayley minimal but not 2-minimal.
  const auto w = build_expr("wr(Z,Z;U=<100,010>;L=<100>)", g);
  CHECK(is_2_minimal(w) == false);
  CHECK(is_cayley_minimal(w) == true);
  CHECK(is_cayley_minimal(group_ring(g)) == true);
  CHECK(is_cayley_minimal(row(3)) == true);
  CHECK(is_cayley_minimal(row(5)) == false);
}

TEST_CASE("cyclotomic and schurian predicates", "[morphisms]") {
  const auto g = GroupSpec::parse("3^3");
  for (int r = 1; r <= 6; ++r) {
    CHECK(is_cyclotomic(row(r)));
    CHECK(is_schurian(row(r)));
  }
  for (const auto& e : catalog8().entries) CHECK(is_schurian(e.ring));
}

TEST_CASE("algebraic images of sections", "[morphisms]") {
  const auto a = row(2);
  const auto& g = a.group();
  const auto isos = algebraic_isos(a, a, 10000);
  REQUIRE(!isos.empty());
  for (const auto& phi : isos) {
    CHECK(phi.image(ElementSet::of(std::vector<Elem>{0})) == ElementSet::of(std::vector<Elem>{0}));
    CHECK(phi.image(g.all()) == g.all());
  }
}

TEST_CASE("canonical forms", "[morphisms]") {
  const auto g = GroupSpec::parse("3^3");
  std::mt19937_64 rng(3);
  const auto aut = aut_group(g);
  for (int r = 1; r <= 6; ++r) {
    const auto a = row(r);
    const auto phi = GroupAut::from_perm(g, aut.random_element(rng));
    std::vector<ElementSet> cells;
    for (const auto& c : a.cells()) cells.push_back(phi.apply(c));
    const auto b = SRing::from_cells(g, cells);
    CHECK(canonical_form(a) == canonical_form(b));
  }
  CHECK(canonical_form(row(3)) != canonical_form(row(5)));
  CHECK(canonical_form(row(3)) != canonical_form(row(6)));
}
