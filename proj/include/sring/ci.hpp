#pragma once

// The CI property of S-rings: A is CI when iso(A) = Aut(A) Aut(G), where
// iso(A) is the set of bijections of G mapping A onto some S-ring over G.
//
// Decision procedures, the wreath-product sufficient condition
//   Aut_S(A_S) = Aut_U(A_U)^S Aut_{G/L}(A_{G/L})^S
// for an S-wreath product with S = U/L, the constructive lift of an
// isomorphism to a Cayley isomorphism under that condition, and fast paths.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sring/catalog.hpp"
#include "sring/groups.hpp"
#include "sring/permgrp.hpp"
#include "sring/sring.hpp"

namespace sring {

enum class CIVerdict { ci, not_ci, undecided };

enum class CIMethod {
  none,
  bruteforce,
  regular_subgroups,
  cayley_realization,
  fastpath_trivial,   // A_S is the group ring
  fastpath_min,       // A cyclotomic, A_S 2-minimal or Cayley minimal
  fastpath_thin,      // p-S-ring, |G : O_theta| = p
  fastpath_easy,      // cyclotomic p-S-ring, |G : O_theta| = p^2
  fastpath_quotient,  // schurian p-S-ring, |L| = p, A_{G/L} 2-minimal
  theorem1,           // the wreath condition holds
};

const char* to_string(CIVerdict v);
const char* to_string(CIMethod m);
CIMethod parse_ci_method(const std::string& s);

struct CIStatus {
  CIVerdict verdict = CIVerdict::undecided;
  CIMethod method = CIMethod::none;
  // NotCI witnesses: an isomorphism outside Aut(A)Aut(G), or a regular
  // subgroup of Aut(A) not conjugate to G_right.
  std::optional<Perm> witness;
  std::optional<PermGroup> witness_group;
  // Which bound was hit for Undecided; free-form otherwise.
  std::string detail;
};

// CI status lookup for S-rings over smaller groups (parts of a wreath
// product). Results are cached by group and canonical form.
class CIOracle;

struct CIOptions {
  bool fastpaths = true;
  // Methods tried after the fast paths, in order.
  std::vector<CIMethod> methods{CIMethod::regular_subgroups, CIMethod::bruteforce, CIMethod::cayley_realization};
  std::size_t regular_bound = 2000000;    // |Aut(A)| for the regular-subgroup method
  std::size_t iso_limit = 200000;         // algebraic isomorphisms per target
  unsigned bruteforce_max_order = 8;
  std::size_t minimality_bound = 100000;
  // Complete catalog of the given group (all S-rings, or p-S-rings for a
  // p-S-ring), needed by cayley_realization.
  std::function<const Catalog*(const GroupSpec&, Filter)> catalog;
};

// f maps A onto an S-ring over G: f t f^-1 preserves the Cayley colouring
// for every translation t.
bool iso_membership(const Perm& f, const SRing& a);

CIStatus is_ci_bruteforce(const SRing& a, unsigned max_order = 8);
CIStatus is_ci_regular(const SRing& a, std::size_t order_bound = 2000000);
// Every algebraic isomorphism to a catalog S-ring that is induced by a
// combinatorial isomorphism must also be induced by a Cayley isomorphism.
CIStatus is_ci_realization(const SRing& a, const Catalog& catalog, std::size_t iso_limit = 200000);

// The three groups of the wreath condition as explicit permutation sets on
// the points of s.quotient().
struct Condition1 {
  Section section;
  std::vector<Perm> aut_s;      // Aut_S(A_S)
  std::vector<Perm> from_u;     // Aut_U(A_U)^S
  std::vector<Perm> from_q;     // Aut_{G/L}(A_{G/L})^S
  std::vector<Perm> product;    // from_u * from_q
  bool holds = false;
};
// Throws not_wreath unless a is the s-wreath product.
Condition1 condition1(const SRing& a, const Section& s);
inline bool condition1_holds(const SRing& a, const Section& s) { return condition1(a, s).holds; }

// A CI status for a part S-ring, computed on demand and cached.
class CIOracle {
 public:
  explicit CIOracle(CIOptions opts = {}) : opts_(std::move(opts)) {}
  const CIStatus& status(const SRing& a);
  const CIOptions& options() const { return opts_; }

 private:
  CIOptions opts_;
  std::map<std::pair<std::string, std::vector<std::uint8_t>>, CIStatus> cache_;
};

// CI by one of the propositions for wreath products when the parts are CI.
std::optional<CIStatus> ci_fastpath(const SRing& a, const Section& s, CIOracle& parts);
// Fast paths that need no section (thin radical of index p).
std::optional<CIStatus> ci_fastpath(const SRing& a, CIOracle& parts);

CIStatus is_ci(const SRing& a, CIOracle& oracle);
CIStatus is_ci(const SRing& a, const CIOptions& opts = {});

// A Cayley isomorphism from a to b inducing the same algebraic isomorphism
// as the combinatorial isomorphism f, built through the section s. Throws
// precondition_failed naming the failing stage.
GroupAut lift_isomorphism(const SRing& a, const SRing& b, const Perm& f, const Section& s);
// Tries the decompositions of a in order.
GroupAut lift_isomorphism(const SRing& a, const SRing& b, const Perm& f);
// alpha is a Cayley isomorphism a -> b inducing the algebraic iso of f.
bool verify_lift(const SRing& a, const SRing& b, const Perm& f, const GroupAut& alpha);

struct CriterionRecord {
  std::size_t entry = 0;
  Section section;
  bool parts_ci = false;
  bool condition = false;
};
struct CriterionReport {
  GroupSpec group;
  std::vector<CIStatus> status;           // per catalog entry
  std::vector<double> seconds;            // per catalog entry, wall clock
  std::vector<CriterionRecord> records;   // decomposable entries x sections
  std::size_t soundness_violations = 0;   // condition holds, A not CI
  std::size_t undecided = 0;
  // CI implies the condition for every section with CI parts.
  bool criterion_every_section = true;
  // CI implies the condition for some section with CI parts.
  bool criterion_some_section = true;
  std::vector<std::string> failures;
};
// CI decisions use only the regular-subgroup, brute-force and realization
// methods so that the comparison with the wreath condition is independent.
// Entries are checked by `jobs` workers; the report does not depend on it.
CriterionReport verify_criterion(const Catalog& catalog, const CIOptions& opts = {},
                                 const std::function<void(const std::string&)>& log = {}, unsigned jobs = 1);

}  // namespace sring
