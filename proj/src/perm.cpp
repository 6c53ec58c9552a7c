#include "bvl/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "bvl/common.hpp"

namespace bvl {

Permutation::Permutation(unsigned degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), 0u);
}

Permutation Permutation::from_images(std::vector<unsigned> images) {
  const unsigned n = static_cast<unsigned>(images.size());
  std::vector<bool> seen(n, false);
  for (unsigned x : images) {
    if (x >= n || seen[x])
      throw DomainError("image array is not a bijection on {1.." + std::to_string(n) + "}");
    seen[x] = true;
  }
  Permutation p;
  p.img_ = std::move(images);
  return p;
}

Permutation Permutation::parse_cycles(unsigned degree, const std::string& text) {
  Permutation p(degree);
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw ParseError("empty permutation literal", i);
  bool any_cycle = false;
  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') throw ParseError("expected '('", i);
    ++i;
    std::vector<unsigned> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      std::size_t start = i;
      unsigned long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<unsigned long>(text[i] - '0');
        ++i;
      }
      if (i == start) throw ParseError("expected a point", i);
      if (v < 1 || v > degree)
        throw ParseError("point " + std::to_string(v) + " outside 1.." + std::to_string(degree),
                         start);
      unsigned pt = static_cast<unsigned>(v - 1);
      if (used[pt]) throw ParseError("point " + std::to_string(v) + " repeated", start);
      used[pt] = true;
      cyc.push_back(pt);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip_ws();
      } else if (i < text.size() && text[i] != ')') {
        throw ParseError("expected ',' or ')'", i);
      }
    }
    if (i == text.size()) throw ParseError("unterminated cycle", i);
    ++i;  // ')'
    any_cycle = true;
    for (std::size_t k = 0; k < cyc.size(); ++k)
      p.img_[cyc[k]] = cyc[(k + 1) % cyc.size()];
    skip_ws();
  }
  if (!any_cycle) throw ParseError("expected a cycle or ()", 0);
  return p;
}

bool Permutation::is_identity() const {
  for (unsigned i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<unsigned> inv(degree());
  for (unsigned i = 0; i < degree(); ++i) inv[img_[i]] = i;
  Permutation p;
  p.img_ = std::move(inv);
  return p;
}

Permutation Permutation::power(long long m) const {
  const uint64_t n = order();
  long long e = m % static_cast<long long>(n);
  if (e < 0) e += static_cast<long long>(n);
  Permutation acc(degree());
  Permutation base = *this;
  while (e > 0) {
    if (e & 1) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1;
  }
  return acc;
}

uint64_t Permutation::order() const {
  uint64_t l = 1;
  for (unsigned len : cycle_type()) l = std::lcm<uint64_t>(l, len);
  return l;
}

std::vector<unsigned> Permutation::cycle_type() const {
  std::vector<unsigned> type;
  std::vector<bool> seen(degree(), false);
  for (unsigned i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    unsigned len = 0, j = i;
    do {
      seen[j] = true;
      j = img_[j];
      ++len;
    } while (j != i);
    type.push_back(len);
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

int Permutation::parity() const {
  // n minus the number of cycles, mod 2.
  unsigned cycles = 0;
  std::vector<bool> seen(degree(), false);
  for (unsigned i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (unsigned j = i; !seen[j]; j = img_[j]) seen[j] = true;
  }
  return static_cast<int>((degree() - cycles) % 2);
}

std::vector<std::vector<unsigned>> Permutation::cycles(bool with_fixed) const {
  std::vector<std::vector<unsigned>> out;
  std::vector<bool> seen(degree(), false);
  for (unsigned i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    std::vector<unsigned> cyc;
    unsigned j = i;
    do {
      seen[j] = true;
      cyc.push_back(j);
      j = img_[j];
    } while (j != i);
    if (cyc.size() > 1 || with_fixed) out.push_back(std::move(cyc));
  }
  return out;
}

std::string Permutation::str() const {
  auto cs = cycles(false);
  if (cs.empty()) return "()";
  std::string s;
  for (const auto& cyc : cs) {
    s += '(';
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(cyc[k] + 1);
    }
    s += ')';
  }
  return s;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw DomainError("degree mismatch: " + std::to_string(p.degree()) + " vs " +
                      std::to_string(q.degree()));
  std::vector<unsigned> img(p.degree());
  for (unsigned i = 0; i < p.degree(); ++i) img[i] = q.at(p.at(i));
  return Permutation::from_images(std::move(img));
}

Permutation conjugate(const Permutation& g, const Permutation& h) {
  return compose(compose(h, g), h.inverse());
}

Permutation commutator(const Permutation& g, const Permutation& h) {
  return compose(compose(compose(g, h), g.inverse()), h.inverse());
}

}  // namespace bvl
