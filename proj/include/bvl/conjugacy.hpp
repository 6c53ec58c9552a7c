// Conjugacy machinery: classes, centralizers and transporters.
//
// All conjugation below follows g^h = h g h^-1 with left-to-right words, so
// g^(uv) = (g^v)^u. The transporter set from a to b, when nonempty, is the
// coset C_G(b) * t for any single representative t.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bvl/common.hpp"
#include "bvl/perm.hpp"
#include "bvl/perm_group.hpp"

namespace bvl {

// How a PermGroup sits inside its symmetric ambient. Alternating/Symmetric
// mean the group IS A(n)/S(n); they unlock closed-form centralizers and
// type-based conjugacy instead of orbit enumeration.
enum class Ambient { Generic, Alternating, Symmetric };

// Orbit of g under conjugation by the generators of G, sorted.
std::vector<Permutation> conjugacy_class(const PermGroup& G, const Permutation& g,
                                         const Bounds& bounds = Bounds::defaults());

// Same orbit, with a conjugator u per member m satisfying g^u = m.
std::map<Permutation, Permutation> conjugacy_class_with_paths(
    const PermGroup& G, const Permutation& g,
    const Bounds& bounds = Bounds::defaults());

// True when the S_n class of this cycle type splits into two A_n classes:
// all parts odd and pairwise distinct.
bool alternating_class_splits(const std::vector<unsigned>& cycle_type);

// Which of the two split classes an even permutation lies in: the parity of
// a conjugator from the canonical representative of its cycle type.
// Meaningful only when the class splits; 0 otherwise.
int alternating_split_bit(const Permutation& p);

// The permutation whose cycles are (1..l1)(l1+1..l1+l2)... for the type.
Permutation canonical_type_rep(unsigned degree, const std::vector<unsigned>& type);

// A_n-conjugacy for even permutations of degree n, without touching orbits.
bool an_conjugacy_test(unsigned n, const Permutation& a, const Permutation& b);

// |C_{S_n}(p)| = prod over distinct cycle lengths l: l^m * m!.
GroupOrder symmetric_centralizer_order(const Permutation& p);

// Closed-form generators of C_{S_n}(p): each cycle, plus a pointwise swap of
// each adjacent pair of same-length cycles.
std::vector<Permutation> symmetric_centralizer_gens(const Permutation& p);

// Generators of the even-permutation subgroup of the group the input gens
// generate (index at most 2).
std::vector<Permutation> even_subgroup_gens(const std::vector<Permutation>& gens);

// Some t with a^t = b, built by aligning cycles; requires equal cycle types.
Permutation matching_conjugator(const Permutation& a, const Permutation& b);

// Generators of C_G(g). Full symmetric groups get the closed form; otherwise
// the ambient centralizer is enumerated and filtered by membership, falling
// back to enumerating G itself; beyond both bounds, a capability error.
std::vector<Permutation> centralizer_in_group(const PermGroup& G, Ambient amb,
                                              const Permutation& g,
                                              const Bounds& bounds = Bounds::defaults());

struct Transporter {
  std::optional<Permutation> representative;  // a^rep = b when present
  std::vector<Permutation> centralizer_gens;  // of b, in G
};

Transporter transporter(const PermGroup& G, Ambient amb, const Permutation& a,
                        const Permutation& b,
                        const Bounds& bounds = Bounds::defaults());

// g in G with a^g = a2 and b^g = b2, when one exists. Solves the constraint
// with the smaller ambient centralizer first, then walks the centralizer
// coset of that solution.
std::optional<Permutation> simultaneous_transporter(
    const PermGroup& G, Ambient amb, const Permutation& a, const Permutation& a2,
    const Permutation& b, const Permutation& b2,
    const Bounds& bounds = Bounds::defaults());

}  // namespace bvl
