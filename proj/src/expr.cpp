#include "sring/expr.hpp"

#include "sring/construct.hpp"
#include "sring/error.hpp"

namespace sring {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  SRing parse_top(const GroupSpec& g) {
    SRing a = expr(g);
    if (pos_ != s_.size()) fail("trailing input");
    return a;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::parse_error, what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  bool peek(const std::string& t) const { return s_.compare(pos_, t.size(), t) == 0; }
  void expect(const std::string& t) {
    if (!peek(t)) fail("expected '" + t + "'");
    pos_ += t.size();
  }
  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
    if (start == pos_) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }

  SRing expr(const GroupSpec& g) {
    if (peek("cyc(")) return cyc(g);
    if (peek("wr(")) return wr(g);
    if (peek("tensor(")) return tensor(g);
    if (peek("Z")) {
      ++pos_;
      return group_ring(g);
    }
    if (peek("T")) {
      ++pos_;
      return trivial_sring(g);
    }
    fail("expected an expression");
  }

  GroupAut aut(const GroupSpec& g) {
    std::vector<std::vector<std::vector<int>>> blocks;
    do {
      expect("[");
      std::vector<std::vector<int>> rows;
      do {
        std::vector<int> row;
        for (char c : digits()) row.push_back(c - '0');
        rows.push_back(row);
      } while (peek("/") && (++pos_, true));
      expect("]");
      blocks.push_back(rows);
    } while (peek("+") && (++pos_, true));
    try {
      return GroupAut::from_matrices(g, blocks);
    } catch (const Error& e) {
      fail(std::string("bad automorphism: ") + e.what());
    }
  }

  SRing cyc(const GroupSpec& g) {
    expect("cyc(");
    std::vector<GroupAut> gens{aut(g)};
    while (peek(",")) {
      ++pos_;
      gens.push_back(aut(g));
    }
    expect(")");
    return cyclotomic(g, gens);
  }

  Subgroup gens(const GroupSpec& g) {
    expect("<");
    std::vector<Elem> v;
    if (!peek(">")) {
      do {
        std::string d = digits();
        if (static_cast<int>(d.size()) != g.num_coords()) fail("vector length differs from the number of coordinates");
        std::vector<int> c;
        for (char ch : d) c.push_back(ch - '0');
        v.push_back(g.index(c));
      } while (peek(",") && (++pos_, true));
    }
    expect(">");
    return Subgroup::span(g, v);
  }

  SRing wr(const GroupSpec& g) {
    expect("wr(");
    const std::size_t first = pos_;
    skip_expr();
    const std::size_t first_end = pos_;
    expect(",");
    const std::size_t second = pos_;
    skip_expr();
    const std::size_t second_end = pos_;
    expect(";U=");
    Subgroup u = gens(g);
    expect(";L=");
    Subgroup l = gens(g);
    expect(")");
    const std::size_t end = pos_;
    if (!l.subset_of(u)) fail("L is not contained in U");
    Section su(u, Subgroup::trivial(g)), sq(Subgroup::whole(g), l);
    pos_ = first;
    SRing au = expr(su.quotient());
    if (pos_ != first_end) fail("unexpected input");
    pos_ = second;
    SRing aq = expr(sq.quotient());
    if (pos_ != second_end) fail("unexpected input");
    pos_ = end;
    try {
      return wreath(au, aq, Section(u, l));
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  GroupSpec group_string() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && ((s_[pos_] >= '0' && s_[pos_] <= '9') || s_[pos_] == '^' || s_[pos_] == 'x')) ++pos_;
    try {
      return GroupSpec::parse(s_.substr(start, pos_ - start));
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  SRing tensor(const GroupSpec& g) {
    expect("tensor(");
    const std::size_t first = pos_;
    skip_expr();
    const std::size_t first_end = pos_;
    expect("@");
    GroupSpec g1 = group_string();
    expect(",");
    const std::size_t second = pos_;
    skip_expr();
    const std::size_t second_end = pos_;
    expect("@");
    GroupSpec g2 = group_string();
    expect(")");
    const std::size_t end = pos_;
    pos_ = first;
    SRing a = expr(g1);
    if (pos_ != first_end) fail("unexpected input");
    pos_ = second;
    SRing b = expr(g2);
    if (pos_ != second_end) fail("unexpected input");
    pos_ = end;
    SRing t = sring::tensor(a, b);
    if (!(t.group() == g)) fail("tensor factors do not multiply to " + g.to_string());
    return t;
  }

  // Skips one expression without building it, tracking brackets.
  void skip_expr() {
    int depth = 0;
    const std::size_t start = pos_;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '(' || c == '[' || c == '<') ++depth;
      else if (c == ')' || c == ']' || c == '>') {
        if (depth == 0) break;
        --depth;
      } else if ((c == ',' || c == ';' || c == '@') && depth == 0) break;
      ++pos_;
    }
    if (pos_ == start) fail("expected an expression");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

SRing build_expr(const std::string& expr, const GroupSpec& g) { return Parser(expr).parse_top(g); }

}  // namespace sring
