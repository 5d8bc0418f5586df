#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace loopforge {

// Element labels of a finite loop are 0..n-1.
using Label = std::uint16_t;

/// A bijection of {0, ..., n-1}.
///
/// Permutations act on the right: `p(x)` is the image written xp in the
/// algebra, and products compose left to right, x(ab) = (xa)b. Every
/// product of translations and inner mappings in this library is written
/// in that order, so R_x R_y R_{xy}^-1 is `rx * ry * rxy.inverse()`.
class Permutation {
 public:
  Permutation() = default;

  // Throws InputError unless `image` is a bijection of 0..image.size()-1.
  explicit Permutation(std::vector<Label> image);
  Permutation(std::initializer_list<Label> image);

  static Permutation identity(std::size_t degree);

  std::size_t degree() const { return image_.size(); }
  Label operator()(Label x) const { return image_[x]; }
  std::span<const Label> image() const { return image_; }

  Permutation inverse() const;
  bool is_identity() const;
  bool fixes(Label x) const { return image_[x] == x; }

  // Space-separated images, e.g. "0 2 1".
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a,
                                          const Permutation& b) {
    return a.image_ <=> b.image_;
  }

 private:
  struct Unchecked {};
  Permutation(std::vector<Label> image, Unchecked) : image_(std::move(image)) {}

  friend Permutation operator*(const Permutation& a, const Permutation& b);

  std::vector<Label> image_;
};

// Left-to-right product: x(a*b) = b(a(x)). Throws DegreeMismatch.
Permutation operator*(const Permutation& a, const Permutation& b);

// Left-to-right composite of a nonempty sequence.
Permutation perm_product(std::span<const Permutation> ps);
Permutation perm_product(std::initializer_list<Permutation> ps);

// Least k >= 1 with p^k = I, computed as the lcm of the cycle lengths.
std::size_t perm_order(const Permutation& p);

// p^k for k >= 0.
Permutation perm_power(const Permutation& p, std::size_t k);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// Ordered triple (A, B, C) of equal-degree permutations; a candidate
/// isotopism or autotopism xA o yB = (x.y)C.
class MappingTriple {
 public:
  MappingTriple(Permutation a, Permutation b, Permutation c);

  static MappingTriple identity(std::size_t degree);

  const Permutation& a() const { return a_; }
  const Permutation& b() const { return b_; }
  const Permutation& c() const { return c_; }
  std::size_t degree() const { return a_.degree(); }

  friend bool operator==(const MappingTriple&, const MappingTriple&) = default;

 private:
  Permutation a_;
  Permutation b_;
  Permutation c_;
};

}  // namespace loopforge
