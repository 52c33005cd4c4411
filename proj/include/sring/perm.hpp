#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace sring {

using point_t = std::uint8_t;

// Permutation of {0,..,n-1}, n <= 256, stored as an image array.
// Products act on the right: x^(a*b) = (x^a)^b, i.e. a is applied first.
class Perm {
 public:
  Perm() = default;
  explicit Perm(unsigned n);
  explicit Perm(std::vector<point_t> images);
  static Perm from_images(const std::vector<unsigned>& images);

  unsigned degree() const { return static_cast<unsigned>(img_.size()); }
  unsigned operator()(unsigned x) const { return img_[x]; }
  const std::vector<point_t>& images() const { return img_; }

  bool is_identity() const;
  // Degree if the permutation is the identity.
  unsigned smallest_moved() const;
  Perm inverse() const;
  std::string to_string() const;

  friend Perm operator*(const Perm& a, const Perm& b);
  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<point_t> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace sring
