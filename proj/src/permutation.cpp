#include "loopforge/permutation.hpp"

#include <numeric>
#include <sstream>

#include "loopforge/error.hpp"

namespace loopforge {

Permutation::Permutation(std::vector<Label> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t i = 0; i < image_.size(); ++i) {
    const Label v = image_[i];
    if (v >= image_.size()) {
      throw InputError("permutation image " + std::to_string(v) +
                       " at position " + std::to_string(i) +
                       " is outside 0.." + std::to_string(image_.size() - 1));
    }
    if (seen[v]) {
      throw InputError("permutation repeats image " + std::to_string(v));
    }
    seen[v] = true;
  }
}

Permutation::Permutation(std::initializer_list<Label> image)
    : Permutation(std::vector<Label>(image)) {}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Label> image(degree);
  std::iota(image.begin(), image.end(), Label{0});
  return Permutation(std::move(image), Unchecked{});
}

Permutation Permutation::inverse() const {
  std::vector<Label> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) {
    inv[image_[i]] = static_cast<Label>(i);
  }
  return Permutation(std::move(inv), Unchecked{});
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] != i) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (i) out << ' ';
    out << image_[i];
  }
  return out.str();
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) {
    throw DegreeMismatch("cannot compose permutations of degree " +
                         std::to_string(a.degree()) + " and " +
                         std::to_string(b.degree()));
  }
  std::vector<Label> out(a.degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = b.image_[a.image_[i]];
  return Permutation(std::move(out), Permutation::Unchecked{});
}

Permutation perm_product(std::span<const Permutation> ps) {
  if (ps.empty()) throw InputError("perm_product of an empty sequence");
  Permutation out = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) out = out * ps[i];
  return out;
}

Permutation perm_product(std::initializer_list<Permutation> ps) {
  return perm_product(std::span<const Permutation>(ps.begin(), ps.size()));
}

std::size_t perm_order(const Permutation& p) {
  const std::size_t n = p.degree();
  std::vector<bool> visited(n, false);
  std::size_t order = 1;
  for (std::size_t start = 0; start < n; ++start) {
    if (visited[start]) continue;
    std::size_t len = 0;
    for (std::size_t x = start; !visited[x]; x = p(static_cast<Label>(x))) {
      visited[x] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

Permutation perm_power(const Permutation& p, std::size_t k) {
  Permutation out = Permutation::identity(p.degree());
  for (std::size_t i = 0; i < k; ++i) out = out * p;
  return out;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = p.degree();
  for (Label v : p.image()) h = h * 31 + v;
  return h;
}

MappingTriple::MappingTriple(Permutation a, Permutation b, Permutation c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (a_.degree() != b_.degree() || a_.degree() != c_.degree()) {
    throw DegreeMismatch("triple components have degrees " +
                         std::to_string(a_.degree()) + ", " +
                         std::to_string(b_.degree()) + ", " +
                         std::to_string(c_.degree()));
  }
}

MappingTriple MappingTriple::identity(std::size_t degree) {
  auto id = Permutation::identity(degree);
  return MappingTriple(id, id, id);
}

}  // namespace loopforge
