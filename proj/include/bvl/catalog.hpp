#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bvl/group_handle.hpp"

namespace bvl {

// Abstract syntax for the group-specification mini-language.
//
//   spec    := factor ("x" factor)*        products associate left
//   factor  := "A" n | "A(" n ")"          alternating, 3 <= n <= 32
//            | "S" n | "S(" n ")"          symmetric, 2 <= n <= 32
//            | "M11"
//            | "L2(8)"
//            | "C(" n ")" ["^" k]          cyclic, or homocyclic for k = 2
//            | "C(" n1 "," n2 ")"
//            | "H(" p "," n "," r ")"      Heisenberg-type p-group
//            | "perm(" d "){" g ";" ... "}"  explicit generators in cycle form
//
// A product chain is flattened into a single node with the factors in
// left-to-right order.
struct GroupSpec {
  enum class Kind {
    Alternating,
    Symmetric,
    M11,
    L2,
    Cyclic,
    Heisenberg,
    ExplicitPerm,
    Product,
  };
  Kind kind = Kind::M11;
  unsigned degree = 0;                    // Alternating, Symmetric, ExplicitPerm
  unsigned field = 0;                     // L2: size of the field
  uint64_t n1 = 0, n2 = 0;                // Cyclic moduli
  uint64_t p = 0;                         // Heisenberg p
  unsigned hn = 0, hr = 0;                // Heisenberg n, r
  std::vector<std::string> generators;    // ExplicitPerm, canonical cycle form
  std::vector<GroupSpec> factors;         // Product, at least two

  bool operator==(const GroupSpec& o) const;
};

// Throws ParseError with the offending position on bad syntax, and
// CapabilityError for recognized but unsupported atoms (M23, L2(q) for
// q != 8, degrees beyond bounds.max_symmetric_degree).
GroupSpec parse_group_spec(const std::string& text,
                           const Bounds& bounds = Bounds::defaults());
std::string render_group_spec(const GroupSpec& spec);

GroupHandle build_group(const GroupSpec& spec,
                        const Bounds& bounds = Bounds::defaults());
GroupHandle build_group(const std::string& text,
                        const Bounds& bounds = Bounds::defaults());

// GF(8) as polynomial residues over GF(2) modulo t^3 + t + 1, packed into
// the low three bits.
struct F8 {
  uint8_t bits = 0;
  friend bool operator==(F8 a, F8 b) { return a.bits == b.bits; }
};
F8 f8_add(F8 a, F8 b);
F8 f8_mul(F8 a, F8 b);
F8 f8_inv(F8 a);  // throws DomainError on zero

// The Moebius action of L2(8) on the nine points of the projective line,
// generated by z -> z+1, z -> tz and z -> 1/z. Point i <= 8 is the field
// element with bits i-1; point 9 is infinity.
PermGroup build_l2_8();

// True when every generating pair of L2(8) is simultaneously inverted by
// conjugation inside the group. Exhausts all unordered generating pairs.
bool macbeath_check(const Bounds& bounds = Bounds::defaults());

struct PaperPairs {
  Element x1, y1, x2, y2;
};

// The two generating pairs of the alternating-group construction, for
// n >= 7 with the odd and even cases dispatched separately. Degrees 6 and
// below are refused.
PaperPairs paper_an_structure(unsigned n);

// The four degree-16 permutations of the M11 x A5 example, as elements of
// the product handle returned by paper_m11a5_group().
PaperPairs paper_m11a5_structure();
GroupHandle paper_m11a5_group(const Bounds& bounds = Bounds::defaults());

}  // namespace bvl
