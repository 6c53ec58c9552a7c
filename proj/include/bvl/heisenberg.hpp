// Normal-form arithmetic for the family
//   G = < x, y, z | x^(p^n), y^(p^n), z^(p^r), [x,y] = z, z central >,
// order p^(2n+r), p an odd prime, n >= r >= 1.
//
// Elements are triples (i, j, k) standing for x^i y^j z^k. The product rule
//   (i1,j1,k1)*(i2,j2,k2) = (i1+i2, j1+j2, k1+k2 - j1*i2)
// is the unique sign choice under which both closed forms below hold, and the
// test suite locks all three against iterated multiplication:
//   inverse:      (i,j,k)^-1   = (-i, -j, -k - i*j)
//   conjugation:  (I,J,K)^(a,b,c) = (I, J, K - b*I + a*J)
//   power:        (i,j,k)^m    = (m*i, m*j, m*k - i*j*m*(m-1)/2)
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bvl/common.hpp"

namespace bvl {

struct HeisParams {
  uint64_t p = 0;
  unsigned n = 0, r = 0;
  uint64_t pn = 0, pr = 0;  // p^n and p^r

  static HeisParams make(uint64_t p, unsigned n, unsigned r);
  GroupOrder order() const;
  bool operator==(const HeisParams&) const = default;
};

struct Triple {
  uint64_t i = 0, j = 0, k = 0;
  auto operator<=>(const Triple&) const = default;
};

Triple hreduce(const HeisParams& P, uint64_t i, uint64_t j, uint64_t k);
Triple hmul(const HeisParams& P, const Triple& a, const Triple& b);
Triple hinv(const HeisParams& P, const Triple& g);
Triple hpow(const HeisParams& P, const Triple& g, long long m);
// g^h = h g h^-1, matching the permutation-side convention.
Triple hconj(const HeisParams& P, const Triple& g, const Triple& h);
Triple hcommutator(const HeisParams& P, const Triple& a, const Triple& b);
uint64_t horder(const HeisParams& P, const Triple& g);
bool his_central(const HeisParams& P, const Triple& g);
std::string hstr(const Triple& g);

// Conjugates of g are g * z^(t * p^v) with v the p-valuation of gcd(i, j);
// the label fixes (i, j) and reduces k accordingly.
std::string hclass_label(const HeisParams& P, const Triple& g);

// <a, b> = G iff the 2x2 determinant of the (i, j) rows is a unit mod p.
bool hgenerates(const HeisParams& P, const Triple& a, const Triple& b);

// The automorphism x -> u, y -> v (and hence z -> [u,v]); defined exactly
// when (u, v) generates, and every generating pair gives a distinct map.
struct HeisAut {
  Triple u, v, w;  // w = [u, v], the image of z
  bool operator==(const HeisAut&) const = default;
};

HeisAut haut_from_pair(const HeisParams& P, const Triple& u, const Triple& v);
Triple haut_apply(const HeisParams& P, const HeisAut& phi, const Triple& g);
HeisAut haut_inverse(const HeisParams& P, const HeisAut& phi);

// |Aut(G)|: automorphisms correspond bijectively to generating pairs.
GroupOrder heis_aut_order(const HeisParams& P);

// Exponents (a, b) such that conjugation by x^a y^b composed with the map
// (i,j,k) -> (-i,-j,k) inverts both members of the second pair; the first
// pair must already be ((1,0,0),(0,1,0)), which the engine arranges by
// normalizing. The returned pair is verified against hconj before returning.
struct HeisSrWitness {
  uint64_t a = 0, b = 0;
};
HeisSrWitness sr_congruence_witness(const HeisParams& P, const Triple& x2,
                                    const Triple& y2);

uint64_t inv_mod(uint64_t a, uint64_t m);  // a must be a unit mod m

}  // namespace bvl
