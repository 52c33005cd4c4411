#include "sring/perm.hpp"

#include "sring/error.hpp"

namespace sring {

Perm::Perm(unsigned n) : img_(n) {
  if (n > 256) throw Error(ErrorKind::precondition_failed, "permutation degree exceeds 256");
  for (unsigned i = 0; i < n; ++i) img_[i] = static_cast<point_t>(i);
}

Perm::Perm(std::vector<point_t> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size());
  for (auto x : img_) {
    if (x >= img_.size() || seen[x]) throw Error(ErrorKind::precondition_failed, "image array is not a bijection");
    seen[x] = true;
  }
}

Perm Perm::from_images(const std::vector<unsigned>& images) {
  std::vector<point_t> v(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] > 255) throw Error(ErrorKind::precondition_failed, "image out of range");
    v[i] = static_cast<point_t>(images[i]);
  }
  return Perm(std::move(v));
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

unsigned Perm::smallest_moved() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return static_cast<unsigned>(i);
  return degree();
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<point_t>(i);
  return r;
}

std::string Perm::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(img_[i]);
  }
  return s + "]";
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw Error(ErrorKind::precondition_failed, "degree mismatch in product");
  Perm r;
  r.img_.resize(a.img_.size());
  for (std::size_t i = 0; i < a.img_.size(); ++i) r.img_[i] = b.img_[a.img_[i]];
  return r;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (auto x : p.images()) h = (h ^ x) * 1099511628211ULL;
  return h;
}

}  // namespace sring
