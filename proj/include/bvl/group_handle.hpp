// A uniform interface over the group backends, so verification and search
// never branch on what kind of group they are working in.
//
// Handles are cheap to copy (shared immutable state) and safe to share
// across threads; the only internal mutation is a guarded conjugacy-class
// label cache.
#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bvl/common.hpp"
#include "bvl/conjugacy.hpp"
#include "bvl/element.hpp"
#include "bvl/heisenberg.hpp"
#include "bvl/perm_group.hpp"

namespace bvl {

enum class BackendKind { Permutation, Abelian, Heisenberg, Product };

// Canonical conjugacy-class label: equal labels iff conjugate elements.
struct ClassId {
  std::string label;
  auto operator<=>(const ClassId&) const = default;
};

class GroupHandle {
 public:
  static GroupHandle permutation(std::string name, unsigned degree,
                                 std::vector<Permutation> generators,
                                 Ambient ambient = Ambient::Generic,
                                 const Bounds& bounds = Bounds::defaults());
  static GroupHandle abelian(std::string name, uint64_t n1, uint64_t n2,
                             const Bounds& bounds = Bounds::defaults());
  static GroupHandle heisenberg(std::string name, const HeisParams& params,
                                const Bounds& bounds = Bounds::defaults());
  static GroupHandle product(std::string name, std::vector<GroupHandle> factors,
                             const Bounds& bounds = Bounds::defaults());

  BackendKind kind() const;
  const std::string& name() const;
  const Bounds& bounds() const;
  GroupOrder order() const;

  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element invert(const Element& a) const;
  Element power(const Element& a, long long m) const;
  uint64_t element_order(const Element& a) const;
  Element conjugate_by(const Element& g, const Element& h) const;  // h g h^-1

  // Shape and range check; every public entry point calls this on inputs.
  void validate(const Element& a) const;

  bool is_generating_pair(const Element& a, const Element& b) const;
  ClassId class_id(const Element& a) const;

  // The defining generators, as elements of this handle.
  std::vector<Element> stored_generators() const;

  Element parse_element(const std::string& text) const;
  std::string render_element(const Element& a) const;

  Element random_element(std::mt19937_64& rng) const;
  bool enumerable() const;  // within the handle's enumeration bound
  std::vector<Element> elements() const;

  // Backend access for the specialized engine and automorphism paths.
  const PermGroup* perm_group() const;  // non-null iff permutation backend
  Ambient perm_ambient() const;
  const HeisParams* heis_params() const;          // non-null iff Heisenberg
  std::pair<uint64_t, uint64_t> abelian_moduli() const;  // valid iff abelian
  const std::vector<GroupHandle>* factors() const;       // non-null iff product

 private:
  struct Impl;
  explicit GroupHandle(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace bvl
