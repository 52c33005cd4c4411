#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "oracles.hpp"
#include "sring/catalog.hpp"
#include "sring/construct.hpp"
#include "sring/error.hpp"
#include "sring/morphisms.hpp"

using namespace sring;

namespace {

bool is_p_power(std::size_t n, unsigned p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

TEST_CASE("enumeration matches the partition oracle", "[catalog]") {
  for (const char* s : {"2", "3", "2^2", "5", "2x3", "7", "2^3", "3^2"}) {
    const auto g = GroupSpec::parse(s);
    INFO(s);
    const auto rings = oracle::all_srings(g);
    const auto classes = oracle::cayley_classes(g, rings);
    const auto cat = enumerate_srings(g, Filter::all);
    CHECK(cat.entries.size() == classes);
    // Every oracle S-ring is Cayley isomorphic to exactly one entry.
    for (const auto& cells : rings) {
      std::vector<ElementSet> sets;
      for (const auto& c : cells) sets.push_back(ElementSet::of(c));
      CHECK(cat.find(SRing::from_cells(g, sets)).has_value());
    }
    if (g.is_p_group()) {
      const unsigned p = g.factors()[0].prime;
      std::vector<oracle::Cells> prings;
      for (const auto& r : rings)
        if (std::all_of(r.begin(), r.end(), [&](const auto& c) { return is_p_power(c.size(), p); })) prings.push_back(r);
      CHECK(enumerate_srings(g, Filter::p_srings).entries.size() == oracle::cayley_classes(g, prings));
    }
  }
}

TEST_CASE("fixed class counts", "[catalog]") {
  CHECK(enumerate_srings(GroupSpec::parse("3"), Filter::all).entries.size() == 2);
  CHECK(enumerate_srings(GroupSpec::parse("3^2"), Filter::p_srings).entries.size() == 2);
  CHECK(enumerate_srings(GroupSpec::parse("2^3"), Filter::all).entries.size() == 9);
  CHECK(enumerate_srings(GroupSpec::parse("2^4"), Filter::all).entries.size() == 43);
  CHECK(enumerate_srings(GroupSpec::parse("3^3"), Filter::p_srings).entries.size() == 6);
}

TEST_CASE("split search and p-extension agree", "[catalog]") {
  for (const char* s : {"2^3", "3^2", "2^4", "3^3"}) {
    const auto g = GroupSpec::parse(s);
    INFO(s);
    EnumerateOptions split, ext;
    split.method = EnumerationMethod::split_search;
    ext.method = EnumerationMethod::p_extension;
    const auto a = enumerate_srings(g, Filter::p_srings, split);
    const auto b = enumerate_srings(g, Filter::p_srings, ext);
    CHECK(a.digest() == b.digest());
    CHECK(a.entries.size() == b.entries.size());
  }
  CHECK_THROWS_AS(
      enumerate_srings(GroupSpec::parse("2x3"), Filter::all, {.method = EnumerationMethod::p_extension}), Error);
}

TEST_CASE("catalog entries are sorted, distinct and annotated", "[catalog]") {
  const auto cat = enumerate_srings(GroupSpec::parse("3^3"), Filter::p_srings);
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    const auto& e = cat.entries[i];
    CHECK(e.id == i);
    CHECK(e.canon == canonical_form(e.ring));
    CHECK(e.thin_order == thin_radical(e.ring).order());
    CHECK(e.decomposable == is_decomposable(e.ring));
    if (i > 0) CHECK(cat.entries[i - 1].ring.rank() <= e.ring.rank());
    for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(cayley_isomorphic(cat.entries[j].ring, e.ring));
  }
}

TEST_CASE("catalog files round trip", "[catalog]") {
  auto cat = enumerate_srings(GroupSpec::parse("2^3"), Filter::all);
  cat.entries[2].ci = "CI";
  cat.entries[2].ci_method = "bruteforce";
  std::stringstream buf;
  save_catalog(cat, buf);
  const auto back = load_catalog(buf);
  CHECK(back.group == cat.group);
  CHECK(back.filter == cat.filter);
  CHECK(back.digest() == cat.digest());
  REQUIRE(back.entries.size() == cat.entries.size());
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    CHECK(back.entries[i].ring == cat.entries[i].ring);
    CHECK(back.entries[i].label == cat.entries[i].label);
    CHECK(back.entries[i].ci == cat.entries[i].ci);
  }
}

TEST_CASE("corrupted catalog files are rejected", "[catalog]") {
  const auto cat = enumerate_srings(GroupSpec::parse("2^2"), Filter::all);
  std::stringstream buf;
  save_catalog(cat, buf);
  const std::string text = buf.str();
  auto rejects = [](std::string s) {
    std::stringstream in(s);
    try {
      load_catalog(in);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::io_error;
    }
    return false;
  };
  auto replace = [&](const std::string& from, const std::string& to) {
    std::string s = text;
    const auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    s.replace(pos, from.size(), to);
    return s;
  };
  CHECK(rejects(replace("\"version\":1", "\"version\":2")));
  CHECK(rejects(replace("\"digest\":\"", "\"digest\":\"0")));
  CHECK(rejects(text.substr(0, text.rfind('\n', text.size() - 2) + 1)));  // last entry dropped
  CHECK(rejects("not json\n"));
  CHECK(rejects(""));
}

TEST_CASE("enumeration resumes from a checkpoint", "[catalog]") {
  const auto g = GroupSpec::parse("2^4");
  const auto path = (std::filesystem::temp_directory_path() / "srtool-unit.checkpoint").string();
  std::filesystem::remove(path);
  EnumerateOptions opts;
  opts.method = EnumerationMethod::split_search;
  opts.checkpoint_path = path;
  opts.checkpoint_interval = 0;
  opts.node_budget = 200;
  CHECK_THROWS_AS(enumerate_srings(g, Filter::all, opts), ResourceLimit);
  REQUIRE(std::filesystem::exists(path));
  opts.node_budget = 0;
  const auto resumed = enumerate_srings(g, Filter::all, opts);
  std::filesystem::remove(path);
  CHECK(resumed.entries.size() == 43);
  CHECK(resumed.digest() == enumerate_srings(g, Filter::all).digest());

  // A checkpoint of another group is refused.
  opts.node_budget = 50;
  CHECK_THROWS_AS(enumerate_srings(g, Filter::all, opts), ResourceLimit);
  CHECK_THROWS_AS(enumerate_srings(GroupSpec::parse("2^3"), Filter::all, opts), Error);
  std::filesystem::remove(path);
}

TEST_CASE("table 1 at p = 3", "[catalog]") {
  const auto t = table1(3);
  CHECK(t.mismatches.empty());
  CHECK(t.catalog.entries.size() == 6);
  REQUIRE(t.rows.size() == 6);
  const std::vector<bool> dec{false, true, true, true, true, false};
  const std::vector<unsigned> thin{27, 9, 3, 9, 3, 3};
  const std::vector<unsigned> rank{27, 11, 11, 15, 7, 11};
  for (int i = 0; i < 6; ++i) {
    INFO("row " << i + 1);
    REQUIRE(t.rows[i].entry.has_value());
    const auto& e = t.catalog.entries[*t.rows[i].entry];
    CHECK(e.decomposable == dec[i]);
    CHECK(e.thin_order == thin[i]);
    CHECK(e.ring.rank() == rank[i]);
  }
  CHECK(t.rank2_classes.size() == 2);
  CHECK_THROWS_AS(table1(2), Error);
  CHECK_THROWS_AS(table1(7), Error);
}
