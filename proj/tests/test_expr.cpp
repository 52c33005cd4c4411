#include <catch_amalgamated.hpp>

#include "sring/catalog.hpp"
#include "sring/construct.hpp"
#include "sring/error.hpp"
#include "sring/expr.hpp"
#include "sring/morphisms.hpp"

using namespace sring;

namespace {

ErrorKind parse_failure(const std::string& e, const GroupSpec& g) {
  try {
    build_expr(e, g);
  } catch (const Error& err) {
    return err.kind();
  }
  FAIL("accepted " << e);
  return ErrorKind::io_error;
}

}  // namespace

TEST_CASE("atoms", "[expr]") {
  const auto g = GroupSpec::parse("2^2x3");
  CHECK(build_expr("Z", g) == group_ring(g));
  CHECK(build_expr("T", g) == trivial_sring(g));
}

TEST_CASE("cyclotomic expressions", "[expr]") {
  const auto g = GroupSpec::parse("3^3");
  const auto sigma = GroupAut::from_matrices(g, {{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}});
  CHECK(build_expr("cyc([110/011/001])", g) == cyclotomic(g, {sigma}));
  // One block per prime.
  const auto h = GroupSpec::parse("2^2x3");
  const auto a = build_expr("cyc([01/10]+[2])", h);
  CHECK(a == cyclotomic(h, {GroupAut::from_matrices(h, {{{0, 1}, {1, 0}}, {{2}}})}));
  // One generator of order 2 acting on 12 points with 2 fixed points.
  CHECK(a.rank() == 7);
}

TEST_CASE("wreath and tensor expressions", "[expr]") {
  const auto g = GroupSpec::parse("3^3");
  const auto w = build_expr("wr(Z,Z;U=<100>;L=<100>)", g);
  CHECK(w.rank() == 11);
  CHECK(thin_radical(w).order() == 3);
  const auto t = build_expr("tensor(wr(Z,Z;U=<10>;L=<10>)@3^2,Z@3)", g);
  CHECK(t.rank() == 15);
  CHECK(thin_radical(t).order() == 9);
  // The generalized wreath product ZU wr_{U/L} Z(G/L) is the same S-ring.
  CHECK(cayley_isomorphic(t, build_expr("wr(Z,Z;U=<100,010>;L=<100>)", g)));
  for (const auto& [label, ring] : table1_templates(3)) CHECK(build_expr(label, g) == ring);
}

TEST_CASE("malformed expressions", "[expr]") {
  const auto g = GroupSpec::parse("3^3");
  CHECK(parse_failure("", g) == ErrorKind::parse_error);
  CHECK(parse_failure("Q", g) == ErrorKind::parse_error);
  CHECK(parse_failure("wr(Z,Z;U=<100>)", g) == ErrorKind::parse_error);
  CHECK(parse_failure("cyc([11/01])", g) == ErrorKind::parse_error);
  CHECK(parse_failure("Z trailing", g) == ErrorKind::parse_error);
  // Well-formed but not a wreath product: L outside U.
  CHECK_THROWS_AS(build_expr("wr(Z,Z;U=<100>;L=<010>)", g), Error);
  // Singular matrix.
  CHECK_THROWS_AS(build_expr("cyc([100/100/001])", g), Error);
}
