// A group element for any backend: permutation, abelian vector, Heisenberg
// triple, or tuple over a direct product's factors.
#pragma once

#include <compare>
#include <cstdint>
#include <variant>
#include <vector>

#include "bvl/common.hpp"
#include "bvl/heisenberg.hpp"
#include "bvl/perm.hpp"

namespace bvl {

class Element;
using ProductTuple = std::vector<Element>;

struct AbelianVec {
  uint64_t a = 0, b = 0;  // residues mod (n1, n2), always reduced
  auto operator<=>(const AbelianVec&) const = default;
};

class Element {
 public:
  Element() = default;
  explicit Element(Permutation p) : v_(std::move(p)) {}
  explicit Element(AbelianVec v) : v_(v) {}
  explicit Element(Triple t) : v_(t) {}
  explicit Element(ProductTuple t) : v_(std::move(t)) {}

  bool is_perm() const { return std::holds_alternative<Permutation>(v_); }
  bool is_abelian() const { return std::holds_alternative<AbelianVec>(v_); }
  bool is_heis() const { return std::holds_alternative<Triple>(v_); }
  bool is_tuple() const { return std::holds_alternative<ProductTuple>(v_); }

  const Permutation& perm() const { return expect<Permutation>("permutation"); }
  const AbelianVec& abelian() const { return expect<AbelianVec>("abelian vector"); }
  const Triple& heis() const { return expect<Triple>("triple"); }
  const ProductTuple& tuple() const { return expect<ProductTuple>("tuple"); }

  // Hand-rolled: the recursive tuple alternative defeats the defaulted
  // three-way operator's synthesis.
  std::strong_ordering operator<=>(const Element& o) const {
    if (auto c = v_.index() <=> o.v_.index(); c != 0) return c;
    switch (v_.index()) {
      case 0:
        return std::get<0>(v_) <=> std::get<0>(o.v_);
      case 1:
        return std::get<1>(v_) <=> std::get<1>(o.v_);
      case 2:
        return std::get<2>(v_) <=> std::get<2>(o.v_);
      default: {
        const auto& a = std::get<3>(v_);
        const auto& b = std::get<3>(o.v_);
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
          if (auto c = a[i] <=> b[i]; c != 0) return c;
        return a.size() <=> b.size();
      }
    }
  }
  bool operator==(const Element& o) const { return (*this <=> o) == 0; }

 private:
  template <class T>
  const T& expect(const char* what) const {
    if (const T* p = std::get_if<T>(&v_)) return *p;
    throw DomainError(std::string("element is not a ") + what);
  }

  std::variant<Permutation, AbelianVec, Triple, ProductTuple> v_;
};

}  // namespace bvl
