// Permutation groups with a base and strong generating set.
//
// The chain is built deterministically on first use and memoized behind a
// single-initialization guard, so a const PermGroup is safe to share across
// threads. Group orders are exact (wide integer arithmetic).
#pragma once

#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include "bvl/common.hpp"
#include "bvl/perm.hpp"

namespace bvl {

class PermGroup {
 public:
  PermGroup(unsigned degree, std::vector<Permutation> generators);

  unsigned degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }

  GroupOrder order() const;
  bool contains(const Permutation& p) const;

  // All elements in ascending image order; CapabilityError above `limit`.
  std::vector<Permutation> elements(std::size_t limit) const;

  // Uniform over the group: one transversal element per chain level.
  Permutation random_element(std::mt19937_64& rng) const;

 private:
  struct Chain {
    std::vector<unsigned> base;
    std::vector<std::vector<Permutation>> gens;   // level l gens fix base[0..l-1]
    std::vector<std::vector<unsigned>> orbit;     // discovery order
    std::vector<std::vector<int>> pos;            // point -> orbit index, -1 absent
    std::vector<std::vector<Permutation>> trans;  // point-indexed, maps base[l] there
    GroupOrder order = 1;
  };

  const Chain& chain() const;
  void build() const;
  void recompute_orbit(Chain& c, std::size_t level) const;
  // Sifts g through levels [from, end); returns the residue and the level
  // where sifting stopped (chain length when g sifted all the way through).
  std::pair<Permutation, std::size_t> strip(const Chain& c, Permutation g,
                                            std::size_t from) const;

  unsigned degree_;
  std::vector<Permutation> gens_;
  mutable std::once_flag built_;
  mutable Chain chain_;
};

// Breadth-first closure of the generating set, independent of the chain
// machinery; the cross-check oracle for orders and membership.
std::vector<Permutation> closure_elements(unsigned degree,
                                          const std::vector<Permutation>& gens,
                                          std::size_t limit);

// Draws uniformly from [0, n) using rejection, so results depend only on the
// engine's stream and not on library internals.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);

}  // namespace bvl
