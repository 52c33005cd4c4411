#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace sring {

using Elem = std::uint32_t;

inline constexpr unsigned kMaxOrder = 128;

// Fixed-width bitset over group element indices.
class ElementSet {
 public:
  constexpr ElementSet() = default;

  static ElementSet range(unsigned lo, unsigned hi) {
    ElementSet s;
    for (unsigned i = lo; i < hi; ++i) s.insert(i);
    return s;
  }
  template <class It>
  static ElementSet of(It first, It last) {
    ElementSet s;
    for (; first != last; ++first) s.insert(static_cast<unsigned>(*first));
    return s;
  }
  static ElementSet of(const std::vector<Elem>& v) { return of(v.begin(), v.end()); }

  void insert(unsigned i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void erase(unsigned i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool contains(unsigned i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  unsigned size() const { return std::popcount(w_[0]) + std::popcount(w_[1]); }
  bool empty() const { return (w_[0] | w_[1]) == 0; }
  // Smallest member; kMaxOrder when empty.
  unsigned min() const {
    if (w_[0]) return std::countr_zero(w_[0]);
    if (w_[1]) return 64 + std::countr_zero(w_[1]);
    return kMaxOrder;
  }
  unsigned max() const {
    if (w_[1]) return 127 - std::countl_zero(w_[1]);
    if (w_[0]) return 63 - std::countl_zero(w_[0]);
    return kMaxOrder;
  }
  bool subset_of(const ElementSet& o) const {
    return (w_[0] & ~o.w_[0]) == 0 && (w_[1] & ~o.w_[1]) == 0;
  }
  bool intersects(const ElementSet& o) const { return (w_[0] & o.w_[0]) || (w_[1] & o.w_[1]); }

  ElementSet& operator|=(const ElementSet& o) { w_[0] |= o.w_[0]; w_[1] |= o.w_[1]; return *this; }
  ElementSet& operator&=(const ElementSet& o) { w_[0] &= o.w_[0]; w_[1] &= o.w_[1]; return *this; }
  ElementSet& operator-=(const ElementSet& o) { w_[0] &= ~o.w_[0]; w_[1] &= ~o.w_[1]; return *this; }
  ElementSet& operator^=(const ElementSet& o) { w_[0] ^= o.w_[0]; w_[1] ^= o.w_[1]; return *this; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }
  friend ElementSet operator^(ElementSet a, const ElementSet& b) { return a ^= b; }
  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  // Orders sets by their sorted member lists.
  friend bool lex_less(const ElementSet& a, const ElementSet& b) {
    ElementSet d = a ^ b;
    if (d.empty()) return false;
    return a.contains(d.min());
  }
  std::uint64_t word(int i) const { return w_[i]; }

  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    out.reserve(size());
    for_each([&](unsigned i) { out.push_back(i); });
    return out;
  }
  template <class F>
  void for_each(F&& f) const {
    for (int k = 0; k < 2; ++k) {
      std::uint64_t w = w_[k];
      while (w) {
        unsigned b = std::countr_zero(w);
        f(static_cast<unsigned>(k * 64 + b));
        w &= w - 1;
      }
    }
  }

 private:
  std::uint64_t w_[2] = {0, 0};
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept {
    return s.word(0) * 0x9E3779B97F4A7C15ULL ^ (s.word(1) + 0x632BE59BD9B4E019ULL);
  }
};

}  // namespace sring
