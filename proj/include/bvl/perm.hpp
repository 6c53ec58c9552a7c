// Exact permutation arithmetic on {1..n}.
//
// Products are words read left to right: compose(p, q) applies p first,
// then q. Conjugation follows g^h = h g h^-1 with the same reading, so
// conjugating relabels the points of g by h^-1. Cycle text is 1-based;
// storage is 0-based.
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace bvl {

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(unsigned degree);  // identity

  static Permutation from_images(std::vector<unsigned> images);
  // Parses disjoint cycle notation, e.g. "(1,2,4)(5,6)"; "()" is the identity.
  static Permutation parse_cycles(unsigned degree, const std::string& text);

  unsigned degree() const { return static_cast<unsigned>(img_.size()); }
  unsigned at(unsigned point) const { return img_[point]; }  // 0-based

  bool is_identity() const;
  Permutation inverse() const;
  Permutation power(long long m) const;

  uint64_t order() const;
  // Cycle lengths in descending order, fixed points included as 1s.
  std::vector<unsigned> cycle_type() const;
  int parity() const;  // 0 even, 1 odd
  std::vector<std::vector<unsigned>> cycles(bool with_fixed = false) const;

  std::string str() const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

  const std::vector<unsigned>& images() const { return img_; }

 private:
  std::vector<unsigned> img_;
};

// Applies p first, then q: result(i) = q(p(i)).
Permutation compose(const Permutation& p, const Permutation& q);

// g^h = h g h^-1 (word read left to right).
Permutation conjugate(const Permutation& g, const Permutation& h);

// [g,h] = g h g^-1 h^-1.
Permutation commutator(const Permutation& g, const Permutation& h);

}  // namespace bvl

template <>
struct std::hash<bvl::Permutation> {
  std::size_t operator()(const bvl::Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (unsigned x : p.images()) {
      h ^= x + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};
