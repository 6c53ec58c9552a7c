#include "bvl/catalog.hpp"

#include <cctype>
#include <cstdlib>

#include "bvl/conjugacy.hpp"
#include "bvl/heisenberg.hpp"

namespace bvl {

namespace {

GroupOrder factorial(unsigned n) {
  GroupOrder f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

unsigned degree_cap(const Bounds& bounds) { return bounds.max_symmetric_degree; }

// "(a,a+1,...,b)" as a cycle string.
std::string run_cycle(unsigned a, unsigned b) {
  std::string out = "(";
  for (unsigned k = a; k <= b; ++k) {
    if (k > a) out += ",";
    out += std::to_string(k);
  }
  return out + ")";
}

std::vector<Permutation> alternating_gens(unsigned n) {
  if (n == 3) return {Permutation::parse_cycles(3, "(1,2,3)")};
  // The long cycle is chosen even: the n-cycle for odd n, the (n-1)-cycle
  // starting at 2 for even n.
  std::string big = (n % 2) ? run_cycle(1, n) : run_cycle(2, n);
  return {Permutation::parse_cycles(n, "(1,2,3)"),
          Permutation::parse_cycles(n, big)};
}

std::vector<Permutation> symmetric_gens(unsigned n) {
  if (n == 2) return {Permutation::parse_cycles(2, "(1,2)")};
  return {Permutation::parse_cycles(n, "(1,2)"),
          Permutation::parse_cycles(n, run_cycle(1, n))};
}

std::vector<Permutation> m11_gens() {
  // Projections of the degree-16 example generators to the 11-point block.
  return {Permutation::parse_cycles(11, "(1,2,3,4,5,6,7,8,9,10,11)"),
          Permutation::parse_cycles(11, "(1,5,3,4,10,2,8,9,11,6,7)")};
}

struct Parser {
  const std::string& s;
  const Bounds& bounds;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, i);
  }
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool peek(char c) const { return i < s.size() && s[i] == c; }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++i;
  }
  uint64_t number() {
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      fail("expected a number");
    uint64_t v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > 1'000'000'000'000ULL) fail("number too large");
      ++i;
    }
    return v;
  }
  // A degree argument in either spelling: "A7" or "A(7)".
  unsigned degree_arg() {
    bool paren = peek('(');
    if (paren) ++i;
    auto v = static_cast<unsigned>(number());
    if (paren) expect(')');
    return v;
  }

  GroupSpec atom() {
    skip_ws();
    if (i >= s.size()) fail("expected a group atom");
    GroupSpec g;
    char c = s[i];
    if (c == 'A') {
      ++i;
      g.kind = GroupSpec::Kind::Alternating;
      g.degree = degree_arg();
      if (g.degree < 3) throw DomainError("alternating degree must be at least 3");
      if (g.degree > degree_cap(bounds))
        throw CapabilityError("alternating degree is capped at " +
                              std::to_string(degree_cap(bounds)));
      return g;
    }
    if (c == 'S') {
      ++i;
      g.kind = GroupSpec::Kind::Symmetric;
      g.degree = degree_arg();
      if (g.degree < 2) throw DomainError("symmetric degree must be at least 2");
      if (g.degree > degree_cap(bounds))
        throw CapabilityError("symmetric degree is capped at " +
                              std::to_string(degree_cap(bounds)));
      return g;
    }
    if (c == 'M') {
      if (s.compare(i, 3, "M11") == 0) {
        i += 3;
        g.kind = GroupSpec::Kind::M11;
        return g;
      }
      if (s.compare(i, 3, "M23") == 0)
        throw CapabilityError(
            "M23 is out of scope: only the Mathieu group M11 is built in");
      fail("unknown atom starting with 'M'");
    }
    if (c == 'L') {
      if (s.compare(i, 3, "L2(") != 0) fail("expected 'L2(q)'");
      i += 3;
      auto q = number();
      expect(')');
      if (q != 8)
        throw CapabilityError("only L2(8) is built in; L2(" +
                              std::to_string(q) + ") is out of scope");
      g.kind = GroupSpec::Kind::L2;
      g.field = 8;
      return g;
    }
    if (c == 'C') {
      ++i;
      expect('(');
      uint64_t a = number();
      if (a == 0) throw DomainError("cyclic modulus must be positive");
      g.kind = GroupSpec::Kind::Cyclic;
      if (peek(',')) {
        ++i;
        uint64_t b = number();
        if (b == 0) throw DomainError("cyclic modulus must be positive");
        expect(')');
        g.n1 = a;
        g.n2 = b;
        return g;
      }
      expect(')');
      if (peek('^')) {
        ++i;
        uint64_t k = number();
        if (k < 1 || k > 2)
          throw CapabilityError("cyclic powers are limited to C(n)^1 and C(n)^2");
        g.n1 = (k == 2) ? a : 1;
        g.n2 = a;
        return g;
      }
      g.n1 = 1;
      g.n2 = a;
      return g;
    }
    if (c == 'H') {
      ++i;
      expect('(');
      g.kind = GroupSpec::Kind::Heisenberg;
      g.p = number();
      expect(',');
      g.hn = static_cast<unsigned>(number());
      expect(',');
      g.hr = static_cast<unsigned>(number());
      expect(')');
      // Parameter validation (p an odd prime, n, r >= 1) happens in
      // HeisParams::make at build time.
      return g;
    }
    if (c == 'p') {
      if (s.compare(i, 5, "perm(") != 0) fail("expected 'perm(d){...}'");
      i += 5;
      g.kind = GroupSpec::Kind::ExplicitPerm;
      g.degree = static_cast<unsigned>(number());
      if (g.degree == 0) throw DomainError("permutation degree must be positive");
      expect(')');
      expect('{');
      std::string current;
      for (;; ++i) {
        if (i >= s.size()) fail("unterminated generator list");
        if (s[i] == ';' || s[i] == '}') {
          if (current.empty()) fail("empty generator");
          // Parse now so errors carry the position of this literal.
          g.generators.push_back(
              Permutation::parse_cycles(g.degree, current).str());
          current.clear();
          if (s[i] == '}') {
            ++i;
            return g;
          }
        } else if (!std::isspace(static_cast<unsigned char>(s[i]))) {
          current += s[i];
        }
      }
    }
    fail("unknown group atom");
  }

  GroupSpec spec() {
    GroupSpec first = atom();
    std::vector<GroupSpec> factors;
    for (;;) {
      skip_ws();
      bool sep = false;
      if (peek('x')) {
        ++i;
        sep = true;
      } else if (s.compare(i, 2, "\xc3\x97") == 0) {  // UTF-8 multiplication sign
        i += 2;
        sep = true;
      }
      if (!sep) break;
      if (factors.empty()) factors.push_back(std::move(first));
      factors.push_back(atom());
    }
    if (factors.empty()) return first;
    GroupSpec g;
    g.kind = GroupSpec::Kind::Product;
    g.factors = std::move(factors);
    return g;
  }
};

}  // namespace

bool GroupSpec::operator==(const GroupSpec& o) const {
  return kind == o.kind && degree == o.degree && field == o.field &&
         n1 == o.n1 && n2 == o.n2 && p == o.p && hn == o.hn && hr == o.hr &&
         generators == o.generators && factors == o.factors;
}

GroupSpec parse_group_spec(const std::string& text, const Bounds& bounds) {
  if (text.empty()) throw ParseError("empty group specification", 0);
  Parser parser{text, bounds};
  GroupSpec g = parser.spec();
  parser.skip_ws();
  if (parser.i != text.size()) parser.fail("unexpected trailing input");
  return g;
}

std::string render_group_spec(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupSpec::Kind::Alternating:
      return "A" + std::to_string(spec.degree);
    case GroupSpec::Kind::Symmetric:
      return "S" + std::to_string(spec.degree);
    case GroupSpec::Kind::M11:
      return "M11";
    case GroupSpec::Kind::L2:
      return "L2(8)";
    case GroupSpec::Kind::Cyclic:
      if (spec.n1 == 1) return "C(" + std::to_string(spec.n2) + ")";
      return "C(" + std::to_string(spec.n1) + "," + std::to_string(spec.n2) +
             ")";
    case GroupSpec::Kind::Heisenberg:
      return "H(" + std::to_string(spec.p) + "," + std::to_string(spec.hn) +
             "," + std::to_string(spec.hr) + ")";
    case GroupSpec::Kind::ExplicitPerm: {
      std::string out = "perm(" + std::to_string(spec.degree) + "){";
      for (std::size_t k = 0; k < spec.generators.size(); ++k) {
        if (k) out += ";";
        out += spec.generators[k];
      }
      return out + "}";
    }
    case GroupSpec::Kind::Product: {
      std::string out;
      for (std::size_t k = 0; k < spec.factors.size(); ++k) {
        if (k) out += " x ";
        out += render_group_spec(spec.factors[k]);
      }
      return out;
    }
  }
  throw Error("unhandled group spec kind");
}

GroupHandle build_group(const GroupSpec& spec, const Bounds& bounds) {
  const std::string name = render_group_spec(spec);
  switch (spec.kind) {
    case GroupSpec::Kind::Alternating: {
      auto G = GroupHandle::permutation(name, spec.degree,
                                        alternating_gens(spec.degree),
                                        Ambient::Alternating, bounds);
      if (G.order() != factorial(spec.degree) / 2)
        throw Error("alternating generators produced the wrong order");
      return G;
    }
    case GroupSpec::Kind::Symmetric: {
      auto G = GroupHandle::permutation(name, spec.degree,
                                        symmetric_gens(spec.degree),
                                        Ambient::Symmetric, bounds);
      if (G.order() != factorial(spec.degree))
        throw Error("symmetric generators produced the wrong order");
      return G;
    }
    case GroupSpec::Kind::M11: {
      auto G = GroupHandle::permutation(name, 11, m11_gens(), Ambient::Generic,
                                        bounds);
      if (G.order() != 7920) throw Error("M11 generators produced the wrong order");
      return G;
    }
    case GroupSpec::Kind::L2: {
      auto L = build_l2_8();
      auto G = GroupHandle::permutation(name, 9, L.generators(),
                                        Ambient::Generic, bounds);
      if (G.order() != 504) throw Error("L2(8) generators produced the wrong order");
      return G;
    }
    case GroupSpec::Kind::Cyclic:
      return GroupHandle::abelian(name, spec.n1, spec.n2, bounds);
    case GroupSpec::Kind::Heisenberg:
      return GroupHandle::heisenberg(
          name, HeisParams::make(spec.p, spec.hn, spec.hr), bounds);
    case GroupSpec::Kind::ExplicitPerm: {
      std::vector<Permutation> gens;
      for (const auto& text : spec.generators)
        gens.push_back(Permutation::parse_cycles(spec.degree, text));
      return GroupHandle::permutation(name, spec.degree, std::move(gens),
                                      Ambient::Generic, bounds);
    }
    case GroupSpec::Kind::Product: {
      std::vector<GroupHandle> parts;
      for (const auto& f : spec.factors) parts.push_back(build_group(f, bounds));
      return GroupHandle::product(name, std::move(parts), bounds);
    }
  }
  throw Error("unhandled group spec kind");
}

GroupHandle build_group(const std::string& text, const Bounds& bounds) {
  return build_group(parse_group_spec(text, bounds), bounds);
}

F8 f8_add(F8 a, F8 b) { return F8{static_cast<uint8_t>(a.bits ^ b.bits)}; }

F8 f8_mul(F8 a, F8 b) {
  unsigned acc = 0;
  for (unsigned k = 0; k < 3; ++k)
    if (b.bits >> k & 1u) acc ^= static_cast<unsigned>(a.bits) << k;
  for (int d = 4; d >= 3; --d)
    if (acc >> d & 1u) acc ^= 0b1011u << (d - 3);  // t^3 = t + 1
  return F8{static_cast<uint8_t>(acc & 7u)};
}

F8 f8_inv(F8 a) {
  if (a.bits == 0) throw DomainError("zero has no inverse in GF(8)");
  for (uint8_t x = 1; x < 8; ++x)
    if (f8_mul(a, F8{x}).bits == 1) return F8{x};
  throw Error("GF(8) inverse search failed");
}

PermGroup build_l2_8() {
  // Points 0..7 are the field elements by bit pattern, point 8 is infinity.
  const unsigned inf = 8;
  auto moebius = [&](auto&& f) {
    std::vector<unsigned> img(9);
    for (unsigned e = 0; e < 9; ++e) img[e] = f(e);
    return Permutation::from_images(std::move(img));
  };
  Permutation add_one = moebius([&](unsigned e) -> unsigned {
    return e == inf ? inf : (e ^ 1u);
  });
  Permutation mul_t = moebius([&](unsigned e) -> unsigned {
    return e == inf ? inf : f8_mul(F8{2}, F8{static_cast<uint8_t>(e)}).bits;
  });
  Permutation recip = moebius([&](unsigned e) -> unsigned {
    if (e == inf) return 0;
    if (e == 0) return inf;
    return f8_inv(F8{static_cast<uint8_t>(e)}).bits;
  });
  return PermGroup(9, {add_one, mul_t, recip});
}

bool macbeath_check(const Bounds& bounds) {
  PermGroup L = build_l2_8();
  auto G = GroupHandle::permutation("L2(8)", 9, L.generators(),
                                    Ambient::Generic, bounds);
  auto elements = G.elements();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const Permutation& a = elements[i].perm();
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      const Permutation& b = elements[j].perm();
      if (!G.is_generating_pair(elements[i], elements[j])) continue;
      if (!simultaneous_transporter(L, Ambient::Generic, a, a.inverse(), b,
                                    b.inverse(), bounds))
        return false;
    }
  }
  return true;
}

PaperPairs paper_an_structure(unsigned n) {
  if (n <= 6)
    throw DomainError(
        "the alternating construction starts at degree 7 (A6 is exceptional, "
        "smaller degrees are not covered)");
  if (n > degree_cap(Bounds::defaults()))
    throw CapabilityError("alternating degree is capped at " +
                          std::to_string(degree_cap(Bounds::defaults())));
  auto cyc = [&](const std::string& text) {
    return Element(Permutation::parse_cycles(n, text));
  };
  PaperPairs out;
  if (n % 2) {
    out.x1 = cyc("(1,2,4)");
    out.y1 = cyc(run_cycle(1, n));
    out.x2 = cyc("(5,4,3,2,1)");
    out.y2 = cyc(run_cycle(3, n));
  } else {
    out.x1 = cyc("(1,2)(3,4)");
    out.y1 = cyc(run_cycle(2, n));
    out.x2 = cyc("(1,2,3)" + run_cycle(4, n));
    out.y2 = cyc("(5,4,3,2,1)");
  }
  return out;
}

GroupHandle paper_m11a5_group(const Bounds& bounds) {
  return build_group("M11 x A5", bounds);
}

PaperPairs paper_m11a5_structure() {
  auto G = paper_m11a5_group();
  PaperPairs out;
  out.x1 = G.parse_element("(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16)");
  out.y1 = G.parse_element("(1,5,3,4,10,2,8,9,11,6,7)(12,14,15,13,16)");
  out.x2 = G.parse_element("(1,2,9,10,6)(3,11,5,4,7)(12,13,14,15,16)");
  out.y2 = G.parse_element("(1,4,8,11,3)(2,9,7,5,6)(12,14,15,13,16)");
  return out;
}

}  // namespace bvl
