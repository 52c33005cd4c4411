#pragma once

// Depth-first search over Aut(G), one basis image per level. After level j
// the image of every index below prefix(j+1) is known, which lets visitors
// prune on prefixes.
//
// A visitor provides
//   ElementSet candidates(int level, ElementSet allowed);
//   bool accept(int level, Elem lo, Elem hi, const std::vector<Elem>& img);
//   void undo(int level);
//   bool leaf(const std::vector<Elem>& img, const std::vector<Elem>& basis_images);
// accept() returning false prunes; leaf() returning true stops the search.

#include <vector>

#include "sring/groups.hpp"

namespace sring {

class BasisSearch {
 public:
  explicit BasisSearch(const GroupSpec& g) : g_(g), img_(g.order(), 0), bimg_(g.num_coords(), 0) {
    for (const auto& f : g.factors()) comp_.push_back(g.component(f.prime));
    used_.insert(0);
  }

  // Presets the first `levels` basis images to the identity.
  void fix_identity_prefix(int levels) {
    for (Elem x = 0; x < g_.prefix(levels); ++x) {
      img_[x] = x;
      used_.insert(x);
    }
    for (int j = 0; j < levels; ++j) bimg_[j] = g_.basis(j);
  }

  template <class V>
  bool run(V& v, int level = 0) {
    const int nc = g_.num_coords();
    if (level == nc) return v.leaf(img_, bimg_);
    const unsigned p = g_.coord_prime(level);
    const Elem lo = g_.prefix(level), hi = g_.prefix(level + 1);
    ElementSet cands = v.candidates(level, comp_[g_.factor_of_coord(level)] - used_);
    bool stop = false;
    cands.for_each([&](unsigned c) {
      if (stop) return;
      bimg_[level] = c;
      for (unsigned k = 1; k < p; ++k) {
        const Elem kc = g_.mul(k, c);
        for (Elem low = 0; low < lo; ++low) {
          Elem t = g_.add(img_[low], kc);
          img_[low + k * lo] = t;
          used_.insert(t);
        }
      }
      if (v.accept(level, lo, hi, img_)) stop = run(v, level + 1);
      v.undo(level);
      for (Elem x = lo; x < hi; ++x) used_.erase(img_[x]);
    });
    return stop;
  }

  const GroupSpec& group() const { return g_; }

 private:
  GroupSpec g_;
  std::vector<ElementSet> comp_;
  std::vector<Elem> img_, bimg_;
  ElementSet used_;
};

}  // namespace sring
