#include "bvl/heisenberg.hpp"

#include <numeric>

namespace bvl {

namespace {

bool is_prime(uint64_t p) {
  if (p < 2) return false;
  for (uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

uint64_t pow_u64(uint64_t base, unsigned exp) {
  uint64_t out = 1;
  for (unsigned k = 0; k < exp; ++k) {
    if (out > UINT64_MAX / base) throw DomainError("parameter power overflows");
    out *= base;
  }
  return out;
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t submod(uint64_t a, uint64_t b, uint64_t m) { return (a + m - b % m) % m; }

}  // namespace

HeisParams HeisParams::make(uint64_t p, unsigned n, unsigned r) {
  if (!is_prime(p) || p % 2 == 0)
    throw DomainError("parameter p must be an odd prime, got " + std::to_string(p));
  if (r < 1 || n < r)
    throw DomainError("parameters must satisfy n >= r >= 1, got n=" +
                      std::to_string(n) + " r=" + std::to_string(r));
  HeisParams P;
  P.p = p;
  P.n = n;
  P.r = r;
  P.pn = pow_u64(p, n);
  P.pr = pow_u64(p, r);
  return P;
}

GroupOrder HeisParams::order() const {
  GroupOrder o = 1;
  for (unsigned k = 0; k < 2 * n + r; ++k) o *= p;
  return o;
}

Triple hreduce(const HeisParams& P, uint64_t i, uint64_t j, uint64_t k) {
  return Triple{i % P.pn, j % P.pn, k % P.pr};
}

Triple hmul(const HeisParams& P, const Triple& a, const Triple& b) {
  uint64_t k = submod((a.k + b.k) % P.pr, mulmod(a.j % P.pr, b.i % P.pr, P.pr), P.pr);
  return Triple{(a.i + b.i) % P.pn, (a.j + b.j) % P.pn, k};
}

Triple hinv(const HeisParams& P, const Triple& g) {
  uint64_t i = (P.pn - g.i) % P.pn;
  uint64_t j = (P.pn - g.j) % P.pn;
  uint64_t k = submod(P.pr - g.k % P.pr, mulmod(g.i % P.pr, g.j % P.pr, P.pr), P.pr);
  return Triple{i, j, k % P.pr};
}

Triple hpow(const HeisParams& P, const Triple& g, long long m) {
  // The closed form has period p^n in m, so reduce first.
  uint64_t mm = static_cast<uint64_t>(((m % static_cast<long long>(P.pn)) +
                                       static_cast<long long>(P.pn))) %
                P.pn;
  uint64_t i = mulmod(mm % P.pn, g.i, P.pn);
  uint64_t j = mulmod(mm % P.pn, g.j, P.pn);
  // m*(m-1)/2 is an integer; halve before reducing mod p^r.
  unsigned __int128 tri = static_cast<unsigned __int128>(mm) * (mm ? mm - 1 : 0) / 2;
  uint64_t tri_mod = static_cast<uint64_t>(tri % P.pr);
  uint64_t k = submod(mulmod(mm % P.pr, g.k % P.pr, P.pr),
                      mulmod(mulmod(g.i % P.pr, g.j % P.pr, P.pr), tri_mod, P.pr), P.pr);
  return Triple{i, j, k};
}

Triple hconj(const HeisParams& P, const Triple& g, const Triple& h) {
  return hmul(P, hmul(P, h, g), hinv(P, h));
}

Triple hcommutator(const HeisParams& P, const Triple& a, const Triple& b) {
  return hmul(P, hmul(P, hmul(P, a, b), hinv(P, a)), hinv(P, b));
}

uint64_t horder(const HeisParams& P, const Triple& g) {
  uint64_t oi = P.pn / std::gcd(g.i, P.pn);
  uint64_t oj = P.pn / std::gcd(g.j, P.pn);
  uint64_t t = std::lcm(oi, oj);
  Triple gt = hpow(P, g, static_cast<long long>(t));
  if (gt.i != 0 || gt.j != 0) throw Error("abelian-part order computation failed");
  uint64_t ok = P.pr / std::gcd(gt.k, P.pr);
  return t * ok;
}

bool his_central(const HeisParams& P, const Triple& g) {
  return g.i % P.pr == 0 && g.j % P.pr == 0;
}

std::string hstr(const Triple& g) {
  return "(" + std::to_string(g.i) + "," + std::to_string(g.j) + "," +
         std::to_string(g.k) + ")";
}

std::string hclass_label(const HeisParams& P, const Triple& g) {
  unsigned v = 0;
  uint64_t d = std::gcd(g.i, g.j);
  if (d == 0) {
    v = P.r;
  } else {
    while (v < P.r && d % P.p == 0) {
      d /= P.p;
      ++v;
    }
  }
  uint64_t modulus = pow_u64(P.p, v);  // v <= r
  return std::to_string(g.i) + "," + std::to_string(g.j) + "," +
         std::to_string(g.k % modulus) + "%" + std::to_string(modulus);
}

bool hgenerates(const HeisParams& P, const Triple& a, const Triple& b) {
  uint64_t det = submod(mulmod(a.i % P.p, b.j % P.p, P.p),
                        mulmod(a.j % P.p, b.i % P.p, P.p), P.p);
  return det % P.p != 0;
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
  int64_t t = 0, newt = 1;
  int64_t rr = static_cast<int64_t>(m), newr = static_cast<int64_t>(a % m);
  while (newr != 0) {
    int64_t q = rr / newr;
    t = std::exchange(newt, t - q * newt);
    rr = std::exchange(newr, rr - q * newr);
  }
  if (rr != 1) throw DomainError(std::to_string(a) + " is not a unit mod " +
                                 std::to_string(m));
  return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(m) : t);
}

HeisAut haut_from_pair(const HeisParams& P, const Triple& u, const Triple& v) {
  if (!hgenerates(P, u, v))
    throw DomainError("pair " + hstr(u) + ", " + hstr(v) + " does not generate");
  return HeisAut{u, v, hcommutator(P, u, v)};
}

Triple haut_apply(const HeisParams& P, const HeisAut& phi, const Triple& g) {
  Triple out = hpow(P, phi.u, static_cast<long long>(g.i));
  out = hmul(P, out, hpow(P, phi.v, static_cast<long long>(g.j)));
  return hmul(P, out, hpow(P, phi.w, static_cast<long long>(g.k)));
}

HeisAut haut_inverse(const HeisParams& P, const HeisAut& phi) {
  // Invert the induced matrix on the abelianization, then correct the
  // z-parts so that phi o psi fixes x and y exactly.
  uint64_t det = submod(mulmod(phi.u.i, phi.v.j, P.pn), mulmod(phi.u.j, phi.v.i, P.pn),
                        P.pn);
  uint64_t dinv = inv_mod(det, P.pn);
  Triple xi{mulmod(phi.v.j, dinv, P.pn), mulmod(submod(0, phi.u.j, P.pn), dinv, P.pn),
            0};
  Triple yi{mulmod(submod(0, phi.v.i, P.pn), dinv, P.pn), mulmod(phi.u.i, dinv, P.pn),
            0};
  // phi(z) = z^det, so a z-offset of c on the preimage shifts the image by
  // det*c; cancel whatever z-error the matrix part leaves.
  uint64_t det_r_inv = inv_mod(det % P.pr, P.pr);
  Triple ix = haut_apply(P, phi, xi);
  if (ix.i != 1 % P.pn || ix.j != 0) throw Error("matrix inverse failed on x");
  xi.k = mulmod(submod(0, ix.k, P.pr), det_r_inv, P.pr);
  Triple iy = haut_apply(P, phi, yi);
  if (iy.i != 0 || iy.j != 1 % P.pn) throw Error("matrix inverse failed on y");
  yi.k = mulmod(submod(0, iy.k, P.pr), det_r_inv, P.pr);
  return haut_from_pair(P, xi, yi);
}

GroupOrder heis_aut_order(const HeisParams& P) {
  // First images: (i,j) not both divisible by p, any z-part. Second images:
  // determinant a unit, any z-part.
  GroupOrder p2n = static_cast<GroupOrder>(P.pn) * P.pn;
  GroupOrder first = (p2n - p2n / (P.p * P.p)) * P.pr;
  GroupOrder second = (p2n - p2n / P.p) * P.pr;
  return first * second;
}

HeisSrWitness sr_congruence_witness(const HeisParams& P, const Triple& x2,
                                    const Triple& y2) {
  if (!hgenerates(P, x2, y2))
    throw DomainError("second pair must generate for the congruence system");
  const uint64_t m = P.pr;
  uint64_t i1 = x2.i % m, j1 = x2.j % m, k1 = x2.k % m;
  uint64_t i2 = y2.i % m, j2 = y2.j % m, k2 = y2.k % m;
  // b*i1 - a*j1 = -2k1 - i1*j1 and b*i2 - a*j2 = -2k2 - i2*j2 (mod p^r).
  uint64_t c1 = submod(0, (2 * k1 + mulmod(i1, j1, m)) % m, m);
  uint64_t c2 = submod(0, (2 * k2 + mulmod(i2, j2, m)) % m, m);
  uint64_t det = submod(mulmod(i1, j2, m), mulmod(j1, i2, m), m);
  uint64_t dinv = inv_mod(det, m);
  uint64_t a = mulmod(submod(mulmod(c1, i2, m), mulmod(c2, i1, m), m), dinv, m);
  uint64_t b = mulmod(submod(mulmod(j2, c1, m), mulmod(j1, c2, m), m), dinv, m);

  Triple g2 = hreduce(P, a, b, 0);
  auto inverts = [&](const Triple& t) {
    Triple image{(P.pn - t.i) % P.pn, (P.pn - t.j) % P.pn, t.k};  // (i,j,k)->(-i,-j,k)
    return hconj(P, image, g2) == hinv(P, t);
  };
  if (!inverts(x2) || !inverts(y2))
    throw Error("congruence solution failed conjugation verification");
  return HeisSrWitness{a, b};
}

}  // namespace bvl
