#include "sring/ci.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>

#include "sring/construct.hpp"
#include "sring/error.hpp"
#include "sring/morphisms.hpp"

namespace sring {

const char* to_string(CIVerdict v) {
  switch (v) {
    case CIVerdict::ci: return "CI";
    case CIVerdict::not_ci: return "NotCI";
    case CIVerdict::undecided: return "Undecided";
  }
  return "?";
}

namespace {

const std::pair<CIMethod, const char*> kMethodNames[] = {
    {CIMethod::none, "none"},
    {CIMethod::bruteforce, "bruteforce"},
    {CIMethod::regular_subgroups, "regular-subgroups"},
    {CIMethod::cayley_realization, "cayley-realization"},
    {CIMethod::fastpath_trivial, "fastpath-trivial"},
    {CIMethod::fastpath_min, "fastpath-min"},
    {CIMethod::fastpath_thin, "fastpath-thin"},
    {CIMethod::fastpath_easy, "fastpath-easy"},
    {CIMethod::fastpath_quotient, "fastpath-quotient"},
    {CIMethod::theorem1, "theorem1"},
};

}  // namespace

const char* to_string(CIMethod m) {
  for (const auto& [k, name] : kMethodNames)
    if (k == m) return name;
  return "?";
}

CIMethod parse_ci_method(const std::string& s) {
  for (const auto& [k, name] : kMethodNames)
    if (s == name) return k;
  throw Error(ErrorKind::parse_error, "unknown CI method '" + s + "'");
}

namespace {

CIStatus undecided(CIMethod m, std::string why) {
  CIStatus st;
  st.method = m;
  st.detail = std::move(why);
  return st;
}

CIStatus decided(bool ci, CIMethod m) {
  CIStatus st;
  st.verdict = ci ? CIVerdict::ci : CIVerdict::not_ci;
  st.method = m;
  return st;
}

std::vector<Perm> translation_generators(const GroupSpec& g) {
  std::vector<Perm> out;
  for (int j = 0; j < g.num_coords(); ++j) out.push_back(translation(g, g.basis(j)));
  return out;
}

bool iso_membership(const Perm& f, const ColorMatrix& m, const std::vector<Perm>& tgens) {
  const Perm finv = f.inverse();
  for (const auto& t : tgens)
    if (!preserves_colors(m, m, f * t * finv)) return false;
  return true;
}

}  // namespace

bool iso_membership(const Perm& f, const SRing& a) {
  if (f.degree() != a.order()) throw Error(ErrorKind::precondition_failed, "degree differs from |G|");
  return iso_membership(f, cayley_colors(a), translation_generators(a.group()));
}

// ---------------------------------------------------------------- brute force

CIStatus is_ci_bruteforce(const SRing& a, unsigned max_order) {
  const GroupSpec& g = a.group();
  const unsigned n = g.order();
  if (n > max_order)
    return undecided(CIMethod::bruteforce, "bruteforce limited to |G| <= " + std::to_string(max_order));
  const ColorMatrix m = cayley_colors(a);
  const auto tgens = translation_generators(g);
  // Aut(G) and the translations normalize each other, so it suffices to look
  // at isomorphisms fixing the identity: iso(A)_0 against Aut(A)_0 Aut(G).
  std::vector<Perm> aut_g_inv;
  for (const auto& p : aut_group(g).elements(1u << 20)) aut_g_inv.push_back(p.inverse());
  const BigInt expected = scheme_aut_stabilizer(a).order() * aut_g_inv.size() / cayley_auts(a).order();

  std::vector<point_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::size_t isos = 0, members = 0;
  std::optional<Perm> witness;
  do {
    Perm f(img);
    if (!iso_membership(f, m, tgens)) continue;
    ++isos;
    bool in_product = false;
    for (const auto& phi_inv : aut_g_inv)
      if (preserves_colors(m, m, f * phi_inv)) {
        in_product = true;
        break;
      }
    if (in_product) ++members;
    else if (!witness) witness = f;
  } while (std::next_permutation(img.begin() + 1, img.end()));
  if (BigInt(members) != expected)
    throw Error(ErrorKind::precondition_failed, "product set count disagrees with |Aut(A)_0||Aut(G)|/|Aut_G(A)|");
  CIStatus st = decided(isos == members, CIMethod::bruteforce);
  st.witness = witness;
  st.detail = "|iso(A)_0| = " + std::to_string(isos) + ", |Aut(A)_0 Aut(G)| = " + std::to_string(members);
  return st;
}

// ---------------------------------------------------------------- regular subgroups

CIStatus is_ci_regular(const SRing& a, std::size_t order_bound) {
  PermGroup k = scheme_aut(a);
  if (!k.is_symmetric() && k.order() > order_bound)
    return undecided(CIMethod::regular_subgroups, "|Aut(A)| = " + k.order().str() + " exceeds " + std::to_string(order_bound));
  std::vector<PermGroup> reps;
  try {
    reps = regular_subgroups(k, a.group(), order_bound);
  } catch (const ResourceLimit& e) {
    return undecided(CIMethod::regular_subgroups, e.what());
  }
  CIStatus st = decided(reps.size() == 1, CIMethod::regular_subgroups);
  st.detail = std::to_string(reps.size()) + " class(es) of regular subgroups";
  if (reps.size() > 1) st.witness_group = reps[1];
  return st;
}

// ---------------------------------------------------------------- realization

namespace {

std::vector<unsigned> induced_map(const SRing& a, const SRing& b, const GroupAut& f) {
  std::vector<unsigned> map(a.rank());
  for (unsigned c = 0; c < a.rank(); ++c) map[c] = b.cell_of(f(a.cell(c).min()));
  return map;
}

std::vector<unsigned> cell_sizes(const SRing& a) {
  std::vector<unsigned> s;
  for (const auto& c : a.cells()) s.push_back(c.size());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

CIStatus is_ci_realization(const SRing& a, const Catalog& catalog, std::size_t iso_limit) {
  const CIMethod m = CIMethod::cayley_realization;
  if (!(catalog.group == a.group())) throw Error(ErrorKind::group_mismatch, "catalog of another group");
  if (catalog.filter == Filter::p_srings && !a.is_p_sring())
    return undecided(m, "catalog holds p-S-rings only");
  const auto sizes = cell_sizes(a);
  std::size_t checked = 0;
  for (const auto& e : catalog.entries) {
    const SRing& b = e.ring;
    if (b.rank() != a.rank() || cell_sizes(b) != sizes) continue;
    std::vector<AlgebraicIso> algs;
    std::set<std::vector<unsigned>> realized;
    try {
      algs = algebraic_isos(a, b, iso_limit);
      for (const auto& f : cayley_isos(a, b, iso_limit)) realized.insert(induced_map(a, b, f));
    } catch (const ResourceLimit& ex) {
      return undecided(m, std::string("entry ") + std::to_string(e.id) + ": " + ex.what());
    }
    for (const auto& phi : algs) {
      if (realized.count(phi.map)) continue;
      ++checked;
      if (auto f = find_combinatorial_iso(phi)) {
        CIStatus st = decided(false, m);
        st.witness = *f;
        st.detail = "isomorphism onto entry " + std::to_string(e.id) + " induces no Cayley-realizable algebraic isomorphism";
        return st;
      }
    }
  }
  CIStatus st = decided(true, m);
  st.detail = std::to_string(checked) + " algebraic isomorphism(s) outside Cayley images, none combinatorial";
  return st;
}

// ---------------------------------------------------------------- condition (1)

namespace {

// The three views of S = U/L: as a section of G, as L' inside A_U's group,
// and as U'/1 inside A_{G/L}'s group, with point bijections from S.
struct SectionViews {
  Section s, su, sq;     // U/L, U/1, G/L over G
  Section in_u, in_q;    // U/L' over U/1, U'/1 over G/L
  std::vector<Elem> to_u, to_q, from_u, from_q;

  explicit SectionViews(const Section& sec)
      : s(sec),
        su(sec.upper(), Subgroup::trivial(sec.ambient())),
        sq(Subgroup::whole(sec.ambient()), sec.lower()),
        in_u(Subgroup::whole(su.quotient()), Subgroup::from_set(su.quotient(), su.project(sec.lower().members()))),
        in_q(Subgroup::from_set(sq.quotient(), sq.project(sec.upper().members())), Subgroup::trivial(sq.quotient())) {
    const unsigned n = s.order();
    to_u.resize(n);
    to_q.resize(n);
    from_u.resize(n);
    from_q.resize(n);
    for (Elem q = 0; q < n; ++q) {
      const Elem g = s.lift(q);
      to_u[q] = in_u.project(su.project(g));
      to_q[q] = in_q.project(sq.project(g));
      from_u[to_u[q]] = q;
      from_q[to_q[q]] = q;
    }
  }
};

Perm transport(const Perm& p, const std::vector<Elem>& to, const std::vector<Elem>& from) {
  std::vector<point_t> img(to.size());
  for (Elem q = 0; q < to.size(); ++q) img[q] = static_cast<point_t>(from[p(to[q])]);
  return Perm(std::move(img));
}

// Restrictions to S of the group generated by gens (automorphisms of the
// part's group), each with one preimage.
std::map<Perm, GroupAut> restricted_group(const GroupSpec& part, const std::vector<Perm>& gens, const Section& view,
                                          const std::vector<Elem>& to, const std::vector<Elem>& from) {
  std::map<Perm, GroupAut> out;
  std::vector<GroupAut> auts;
  for (const auto& p : gens) auts.push_back(GroupAut::from_perm(part, p));
  auto key = [&](const GroupAut& f) { return transport(restrict(f.to_perm(), view), to, from); };
  std::vector<GroupAut> queue{GroupAut::identity(part)};
  out.emplace(key(queue[0]), queue[0]);
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& s : auts) {
      GroupAut next = queue[i].then(s);
      if (out.emplace(key(next), next).second) queue.push_back(next);
    }
  return out;
}

std::vector<Perm> keys(const std::map<Perm, GroupAut>& m) {
  std::vector<Perm> out;
  for (const auto& kv : m) out.push_back(kv.first);
  return out;
}

void require_wreath(const SRing& a, const Section& s) {
  if (!(s.ambient() == a.group())) throw Error(ErrorKind::group_mismatch, "section of another group");
  if (!is_a_section(a, s)) throw Error(ErrorKind::not_a_section, s.to_string());
  if (!is_wreath(a, s)) throw Error(ErrorKind::not_wreath, "not the " + s.to_string() + "-wreath product");
}

}  // namespace

Condition1 condition1(const SRing& a, const Section& s) {
  require_wreath(a, s);
  const SectionViews v(s);
  const SRing as = quotient(a, s);
  const SRing au = quotient(a, v.su);
  const SRing aq = quotient(a, v.sq);
  Condition1 c{s, {}, {}, {}, {}, false};
  c.aut_s = cayley_auts(as).elements(1u << 20);
  c.from_u = keys(restricted_group(au.group(), cayley_auts(au).generators(), v.in_u, v.to_u, v.from_u));
  c.from_q = keys(restricted_group(aq.group(), cayley_auts(aq).generators(), v.in_q, v.to_q, v.from_q));
  std::set<Perm> prod;
  for (const auto& x : c.from_u)
    for (const auto& y : c.from_q) prod.insert(x * y);
  c.product.assign(prod.begin(), prod.end());
  c.holds = c.product == c.aut_s;
  return c;
}

// ---------------------------------------------------------------- oracle and fast paths

const CIStatus& CIOracle::status(const SRing& a) {
  auto key = std::make_pair(a.group().to_string(), canonical_form(a));
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  CIStatus st = is_ci(a, *this);
  return cache_.emplace(std::move(key), std::move(st)).first->second;
}

namespace {

bool parts_ci(const SRing& a, const Section& s, CIOracle& parts) {
  const GroupSpec& g = a.group();
  return parts.status(restriction(a, s.upper())).verdict == CIVerdict::ci &&
         parts.status(quotient(a, Section(Subgroup::whole(g), s.lower()))).verdict == CIVerdict::ci;
}

bool is_group_ring(const SRing& a) { return a.rank() == a.order(); }

CIStatus fast(CIMethod m, std::string detail) {
  CIStatus st = decided(true, m);
  st.detail = std::move(detail);
  return st;
}

}  // namespace

std::optional<CIStatus> ci_fastpath(const SRing& a, const Section& s, CIOracle& parts) {
  require_wreath(a, s);
  if (s.lower().order() == 1 || s.upper() == Subgroup::whole(a.group())) return std::nullopt;
  if (!parts_ci(a, s, parts)) return std::nullopt;
  const SRing as = quotient(a, s);
  const std::string where = "section " + s.to_string();
  if (is_group_ring(as)) return fast(CIMethod::fastpath_trivial, where);
  const std::size_t bound = parts.options().minimality_bound;
  const bool cyclotomic = is_cyclotomic(a);
  if (cyclotomic && (is_cayley_minimal(as, bound) == true || is_2_minimal(as, bound) == true))
    return fast(CIMethod::fastpath_min, where);
  const GroupSpec& g = a.group();
  if (cyclotomic && g.is_p_group() && a.is_p_sring()) {
    const unsigned p = static_cast<unsigned>(g.factors()[0].prime);
    if (g.order() == thin_radical(a).order() * p * p) return fast(CIMethod::fastpath_easy, where);
  }
  return std::nullopt;
}

std::optional<CIStatus> ci_fastpath(const SRing& a, CIOracle& parts) {
  const GroupSpec& g = a.group();
  if (!g.is_p_group() || !a.is_p_sring()) return std::nullopt;
  const unsigned p = static_cast<unsigned>(g.factors()[0].prime);
  const Subgroup o = thin_radical(a);
  if (g.order() == o.order() * p) {
    // A = Z O wr_{O/L} Z(G/L) with L the radical of any cell outside O.
    for (unsigned c = 0; c < a.rank(); ++c) {
      if (a.cell(c).subset_of(o.members())) continue;
      const Subgroup l = radical(a, c);
      if (l.subset_of(o) && is_wreath(a, Section(o, l)) && is_group_ring(restriction(a, o)) &&
          is_group_ring(quotient(a, Section(Subgroup::whole(g), l))))
        return fast(CIMethod::fastpath_thin, "|G : O| = p, L = " + l.to_string());
      break;
    }
  }
  if (is_schurian(a)) {
    for (const auto& l : a_subgroups(a)) {
      if (l.order() != p) continue;
      if (is_2_minimal(quotient(a, Section(Subgroup::whole(g), l)), parts.options().minimality_bound) == true)
        return fast(CIMethod::fastpath_quotient, "L = " + l.to_string());
    }
  }
  return std::nullopt;
}

CIStatus is_ci(const SRing& a, CIOracle& oracle) {
  const CIOptions& opts = oracle.options();
  if (opts.fastpaths) {
    if (auto st = ci_fastpath(a, oracle)) return *st;
    const auto decs = decompositions(a);
    for (const auto& s : decs)
      if (auto st = ci_fastpath(a, s, oracle)) return *st;
    for (const auto& s : decs)
      if (parts_ci(a, s, oracle) && condition1_holds(a, s)) return fast(CIMethod::theorem1, "section " + s.to_string());
  }
  std::string why;
  for (CIMethod m : opts.methods) {
    CIStatus st;
    switch (m) {
      case CIMethod::regular_subgroups:
        st = is_ci_regular(a, opts.regular_bound);
        break;
      case CIMethod::bruteforce:
        st = is_ci_bruteforce(a, opts.bruteforce_max_order);
        break;
      case CIMethod::cayley_realization: {
        const Filter f = a.is_p_sring() && a.group().is_p_group() ? Filter::p_srings : Filter::all;
        const Catalog* c = opts.catalog ? opts.catalog(a.group(), f) : nullptr;
        if (!c && f == Filter::p_srings && opts.catalog) c = opts.catalog(a.group(), Filter::all);
        st = c ? is_ci_realization(a, *c, opts.iso_limit) : undecided(m, "no catalog for " + a.group().to_string());
        break;
      }
      default:
        throw Error(ErrorKind::precondition_failed, std::string("not a decision method: ") + to_string(m));
    }
    if (st.verdict != CIVerdict::undecided) return st;
    why += (why.empty() ? "" : "; ") + std::string(to_string(m)) + ": " + st.detail;
  }
  return undecided(CIMethod::none, why);
}

CIStatus is_ci(const SRing& a, const CIOptions& opts) {
  CIOracle oracle(opts);
  return is_ci(a, oracle);
}

// ---------------------------------------------------------------- lifting

namespace {

[[noreturn]] void stage_failed(const std::string& stage, const std::string& what) {
  throw Error(ErrorKind::precondition_failed, "lift_isomorphism: " + stage + ": " + what);
}

// The automorphism sending src[i] to dst[i]; src is a basis of G listed as
// independent elements of prime order.
GroupAut aut_from_basis(const GroupSpec& g, const std::vector<Elem>& src, const std::vector<Elem>& dst) {
  std::vector<int> img(g.order(), -1);
  img[0] = 0;
  std::vector<Elem> reached{0};
  for (std::size_t i = 0; i < src.size(); ++i) {
    const unsigned o = g.element_order(src[i]);
    if (g.element_order(dst[i]) != o) throw Error(ErrorKind::precondition_failed, "basis orders differ");
    const std::size_t cur = reached.size();
    for (std::size_t r = 0; r < cur; ++r) {
      Elem x = reached[r], y = static_cast<Elem>(img[x]);
      for (unsigned k = 1; k < o; ++k) {
        x = g.add(x, src[i]);
        y = g.add(y, dst[i]);
        if (img[x] >= 0) throw Error(ErrorKind::precondition_failed, "source is not independent");
        img[x] = static_cast<int>(y);
        reached.push_back(x);
      }
    }
  }
  if (reached.size() != g.order()) throw Error(ErrorKind::precondition_failed, "source does not span G");
  std::vector<point_t> p(img.begin(), img.end());
  std::vector<bool> seen(g.order());
  for (auto y : p) {
    if (seen[y]) throw Error(ErrorKind::precondition_failed, "images are not independent");
    seen[y] = true;
  }
  return GroupAut::from_perm(g, Perm(std::move(p)));
}

std::vector<Elem> by_order(const GroupSpec& g, std::vector<Elem> v) {
  std::stable_sort(v.begin(), v.end(), [&](Elem x, Elem y) { return g.element_order(x) < g.element_order(y); });
  return v;
}

// Basis of G adapted to L <= U: basis of L, then of a complement of L in U,
// then of a complement of U in G.
std::vector<Elem> adapted_basis(const Section& s) {
  const GroupSpec& g = s.ambient();
  std::vector<Elem> out = by_order(g, s.lower().basis());
  for (Elem x : by_order(g, complement_in(s.lower(), s.upper()).basis())) out.push_back(x);
  for (Elem x : by_order(g, complement_in(s.upper(), Subgroup::whole(g)).basis())) out.push_back(x);
  return out;
}

SRing image_sring(const SRing& b, const GroupAut& t) {
  std::vector<ElementSet> cells;
  for (const auto& c : b.cells()) cells.push_back(t.apply(c));
  return SRing::from_cells(b.group(), cells);
}

// Cell map of a part induced by the algebraic isomorphism fbar of the whole.
std::vector<unsigned> part_map(const SRing& pa, const SRing& pb, const Section& view, const SRing& a, const SRing& b,
                               const AlgebraicIso& fbar) {
  std::vector<unsigned> map(pa.rank());
  for (unsigned c = 0; c < pa.rank(); ++c) {
    const unsigned ca = a.cell_of(view.lift(pa.cell(c).min()));
    const Elem y = b.cell(fbar.map[ca]).min();
    if (!view.contains(y)) stage_failed("part isomorphism", "section not preserved");
    map[c] = pb.cell_of(view.project(y));
  }
  return map;
}

}  // namespace

GroupAut lift_isomorphism(const SRing& a, const SRing& b, const Perm& f, const Section& s) {
  const GroupSpec& g = a.group();
  if (!(b.group() == g)) throw Error(ErrorKind::group_mismatch, "S-rings over different groups");
  require_wreath(a, s);
  AlgebraicIso fbar = [&] {
    try {
      return induced_algebraic_iso(a, b, f);
    } catch (const Error& e) {
      stage_failed("input", e.what());
    }
  }();

  // (i) Move the image section back onto U/L.
  const Section s_img = algebraic_image(fbar, s);
  const GroupAut theta = aut_from_basis(g, adapted_basis(s), adapted_basis(s_img));
  const GroupAut theta_inv = theta.inverse();
  const SRing b2 = image_sring(b, theta_inv);
  const Perm f2 = f * theta_inv.to_perm();
  const AlgebraicIso fbar2 = induced_algebraic_iso(a, b2, f2);

  // (ii) Cayley isomorphisms of the parts inducing the restricted algebraic isos.
  const SectionViews v(s);
  const SRing au = quotient(a, v.su), bu = quotient(b2, v.su);
  const SRing aq = quotient(a, v.sq), bq = quotient(b2, v.sq);
  const auto map_u = part_map(au, bu, v.su, a, b2, fbar2);
  const auto map_q = part_map(aq, bq, v.sq, a, b2, fbar2);
  const auto phi0 = find_cayley_iso(au, bu, &map_u);
  if (!phi0) stage_failed("part over U", "no Cayley isomorphism induces the restricted algebraic isomorphism");
  const auto psi0 = find_cayley_iso(aq, bq, &map_q);
  if (!psi0) stage_failed("part over G/L", "no Cayley isomorphism induces the restricted algebraic isomorphism");

  // (iii) Make the two parts agree on S.
  const Perm phi0_s = transport(restrict(phi0->to_perm(), v.in_u), v.to_u, v.from_u);
  const Perm psi0_s = transport(restrict(psi0->to_perm(), v.in_q), v.to_q, v.from_q);
  const Perm tau = phi0_s * psi0_s.inverse();
  const auto h1 = restricted_group(au.group(), cayley_auts(au).generators(), v.in_u, v.to_u, v.from_u);
  const auto h2 = restricted_group(aq.group(), cayley_auts(aq).generators(), v.in_q, v.to_q, v.from_q);
  std::optional<GroupAut> sigma1, sigma2;
  for (const auto& [r1, s1] : h1) {
    auto it = h2.find(r1.inverse() * tau);
    if (it != h2.end()) {
      sigma1 = s1;
      sigma2 = it->second;
      break;
    }
  }
  if (!sigma1) stage_failed("condition (1)", "phi0^S (psi0^S)^-1 is not in Aut_U(A_U)^S Aut_{G/L}(A_{G/L})^S");
  const GroupAut phi = sigma1->inverse().then(*phi0);
  const GroupAut psi = sigma2->then(*psi0);

  // (iv) alpha = phi on U, and x -> y + z on a complement D of U, where
  // psi(x + L) = y + z + L with y in D and z in a complement V of L in U.
  const Subgroup vsub = complement_in(s.lower(), s.upper());
  const Subgroup dsub = complement_in(s.upper(), Subgroup::whole(g));
  std::vector<int> dv_part(g.order(), -1);
  dsub.members().for_each([&](unsigned d) {
    vsub.members().for_each([&](unsigned x) {
      const Elem dv = g.add(d, x);
      s.lower().members().for_each([&](unsigned l) { dv_part[g.add(dv, l)] = static_cast<int>(dv); });
    });
  });
  std::vector<Elem> src, dst;
  for (Elem u : s.upper().basis()) {
    src.push_back(u);
    dst.push_back(v.su.lift(phi(v.su.project(u))));
  }
  for (Elem x : dsub.basis()) {
    src.push_back(x);
    dst.push_back(static_cast<Elem>(dv_part[v.sq.lift(psi(v.sq.project(x)))]));
  }
  GroupAut alpha = [&] {
    try {
      return aut_from_basis(g, src, dst);
    } catch (const Error& e) {
      stage_failed("assembly", e.what());
    }
  }();
  alpha = alpha.then(theta);
  if (!verify_lift(a, b, f, alpha)) stage_failed("verification", "assembled map does not induce the algebraic isomorphism of f");
  return alpha;
}

GroupAut lift_isomorphism(const SRing& a, const SRing& b, const Perm& f) {
  std::string last = "A is not decomposable";
  for (const auto& s : decompositions(a)) {
    try {
      return lift_isomorphism(a, b, f, s);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::precondition_failed) throw;
      last = e.what();
    }
  }
  throw Error(ErrorKind::precondition_failed, last);
}

bool verify_lift(const SRing& a, const SRing& b, const Perm& f, const GroupAut& alpha) {
  if (!(alpha.group() == a.group()) || !(b.group() == a.group())) return false;
  for (const auto& c : a.cells()) {
    const ElementSet img = alpha.apply(c);
    if (!(b.cell(b.cell_of(img.min())) == img)) return false;
  }
  try {
    return induced_algebraic_iso(a, b, alpha.to_perm()).map == induced_algebraic_iso(a, b, f).map;
  } catch (const Error&) {
    return false;
  }
}

// ---------------------------------------------------------------- criterion

CriterionReport verify_criterion(const Catalog& catalog, const CIOptions& opts,
                                 const std::function<void(const std::string&)>& log, unsigned jobs) {
  CIOptions o = opts;
  o.fastpaths = false;
  std::vector<CIMethod> methods;
  for (CIMethod m : o.methods)
    if (m == CIMethod::regular_subgroups || m == CIMethod::bruteforce || m == CIMethod::cayley_realization)
      methods.push_back(m);
  o.methods = methods;
  auto outer = o.catalog;
  o.catalog = [&catalog, outer](const GroupSpec& g, Filter f) -> const Catalog* {
    if (g == catalog.group && (f == catalog.filter || catalog.filter == Filter::all)) return &catalog;
    return outer ? outer(g, f) : nullptr;
  };
  CriterionReport rep;
  rep.group = catalog.group;
  const std::size_t n = catalog.entries.size();
  rep.status.resize(n);
  rep.seconds.resize(n);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    CIOracle own(o);
    for (std::size_t i; (i = next++) < n;) {
      const auto start = std::chrono::steady_clock::now();
      rep.status[i] = own.status(catalog.entries[i].ring);
      rep.seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (log) {
        std::lock_guard<std::mutex> lock(log_mutex);
        log("entry " + std::to_string(catalog.entries[i].id) + ": " + to_string(rep.status[i].verdict) + " via " +
            to_string(rep.status[i].method));
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& st : rep.status)
    if (st.verdict == CIVerdict::undecided) ++rep.undecided;

  CIOracle oracle(o);
  for (std::size_t i = 0; i < catalog.entries.size(); ++i) {
    const SRing& a = catalog.entries[i].ring;
    const CIStatus& st = rep.status[i];
    bool any_scope = false, some = false, every = true;
    for (const auto& s : decompositions(a)) {
      CriterionRecord r{i, s, parts_ci(a, s, oracle), false};
      if (r.parts_ci) {
        r.condition = condition1_holds(a, s);
        any_scope = true;
        some = some || r.condition;
        every = every && r.condition;
        if (r.condition && st.verdict == CIVerdict::not_ci) {
          ++rep.soundness_violations;
          rep.failures.push_back("entry " + std::to_string(catalog.entries[i].id) + ": condition holds for " +
                                 s.to_string() + " but A is not CI");
        }
      }
      rep.records.push_back(std::move(r));
    }
    if (any_scope && st.verdict == CIVerdict::ci) {
      if (!every) rep.criterion_every_section = false;
      if (!some) rep.criterion_some_section = false;
      if (!every)
        rep.failures.push_back("entry " + std::to_string(catalog.entries[i].id) +
                               ": CI but the condition fails for " + (some ? "some" : "every") + " section");
    }
  }
  return rep;
}

}  // namespace sring
