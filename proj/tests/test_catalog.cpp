#include "bvl/catalog.hpp"

#include <random>
#include <set>

#include "bvl/conjugacy.hpp"
#include "bvl/engine.hpp"
#include "doctest.h"

using namespace bvl;

namespace {

GroupOrder fact(unsigned n) {
  GroupOrder f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

std::string run(unsigned a, unsigned b) {
  std::string out = "(";
  for (unsigned k = a; k <= b; ++k) {
    if (k > a) out += ",";
    out += std::to_string(k);
  }
  return out + ")";
}

}  // namespace

TEST_CASE("catalog groups match their closed-form orders") {
  CHECK(build_group("A7").order() == fact(7) / 2);
  CHECK(build_group("A12").order() == 239500800);
  CHECK(build_group("S7").order() == 5040);
  CHECK(build_group("M11").order() == 7920);
  CHECK(build_group("L2(8)").order() == 504);
  CHECK(build_group("C(12)").order() == 12);
  CHECK(build_group("C(5,5)").order() == 25);
  CHECK(build_group("C(5)^2").order() == 25);
  CHECK(build_group("H(5,1,1)").order() == 125);
  CHECK(build_group("H(3,2,1)").order() == 243);
  CHECK(build_group("M11 x A5").order() == GroupOrder(7920) * 60);
  CHECK(build_group("perm(5){(1,2,3);(3,4,5)}").order() == 60);
}

TEST_CASE("catalog handle names are the canonical renders") {
  CHECK(build_group("A(7)").name() == "A7");
  CHECK(build_group(" M11   x  A5 ").name() == "M11 x A5");
  CHECK(build_group("C(5)^2").name() == "C(5,5)");
}

TEST_CASE("spec parse equivalences and product flattening") {
  CHECK(parse_group_spec("A7") == parse_group_spec("A(7)"));
  CHECK(parse_group_spec("C(5)^2") == parse_group_spec("C(5,5)"));
  CHECK(parse_group_spec("C(7)^1") == parse_group_spec("C(7)"));
  auto p = parse_group_spec("M11 x A5 x C(7)");
  REQUIRE(p.kind == GroupSpec::Kind::Product);
  REQUIRE(p.factors.size() == 3);
  CHECK(p.factors[0].kind == GroupSpec::Kind::M11);
  CHECK(p.factors[1].kind == GroupSpec::Kind::Alternating);
  CHECK(p.factors[2].kind == GroupSpec::Kind::Cyclic);
  CHECK(parse_group_spec("A5 \xc3\x97 C(11)") == parse_group_spec("A5 x C(11)"));
}

TEST_CASE("spec rendering round trips") {
  for (const char* text :
       {"A7", "S12", "M11", "L2(8)", "C(12)", "C(5,5)", "H(5,1,1)",
        "perm(4){(1,2);(1,2,3,4)}", "M11 x A5", "A7 x C(11,11) x H(7,1,1)"}) {
    auto spec = parse_group_spec(text);
    CHECK(parse_group_spec(render_group_spec(spec)) == spec);
  }

  std::mt19937_64 rng(20250816);
  auto rand_atom = [&]() {
    GroupSpec g;
    switch (uniform_index(rng, 6)) {
      case 0:
        g.kind = GroupSpec::Kind::Alternating;
        g.degree = 3 + static_cast<unsigned>(uniform_index(rng, 10));
        break;
      case 1:
        g.kind = GroupSpec::Kind::Symmetric;
        g.degree = 2 + static_cast<unsigned>(uniform_index(rng, 10));
        break;
      case 2:
        g.kind = GroupSpec::Kind::M11;
        break;
      case 3:
        g.kind = GroupSpec::Kind::Cyclic;
        g.n1 = uniform_index(rng, 2) ? 1 : 2 + uniform_index(rng, 20);
        g.n2 = 2 + uniform_index(rng, 28);
        break;
      case 4:
        g.kind = GroupSpec::Kind::Heisenberg;
        g.p = uniform_index(rng, 2) ? 5 : 7;
        g.hn = 1 + static_cast<unsigned>(uniform_index(rng, 2));
        g.hr = 1;
        break;
      default: {
        g.kind = GroupSpec::Kind::ExplicitPerm;
        g.degree = 4 + static_cast<unsigned>(uniform_index(rng, 4));
        for (int k = 0; k < 2; ++k) {
          std::vector<unsigned> img(g.degree);
          for (unsigned q = 0; q < g.degree; ++q) img[q] = q;
          std::shuffle(img.begin(), img.end(), rng);
          g.generators.push_back(Permutation::from_images(img).str());
        }
        break;
      }
    }
    return g;
  };
  for (int trial = 0; trial < 500; ++trial) {
    GroupSpec g;
    auto arity = uniform_index(rng, 3);
    if (arity == 0) {
      g = rand_atom();
    } else {
      g.kind = GroupSpec::Kind::Product;
      for (std::size_t k = 0; k < arity + 1; ++k) g.factors.push_back(rand_atom());
    }
    CHECK(parse_group_spec(render_group_spec(g)) == g);
  }
}

TEST_CASE("spec errors carry positions and scope messages") {
  CHECK_THROWS_AS(parse_group_spec(""), ParseError);
  CHECK_THROWS_WITH_AS(parse_group_spec("A7 y A5"),
                       doctest::Contains("position"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("A2"), DomainError);
  CHECK_THROWS_AS(parse_group_spec("A33"), CapabilityError);
  CHECK_THROWS_WITH_AS(parse_group_spec("M23"),
                       doctest::Contains("out of scope"), CapabilityError);
  CHECK_THROWS_WITH_AS(parse_group_spec("L2(7)"),
                       doctest::Contains("out of scope"), CapabilityError);
  CHECK_THROWS_AS(parse_group_spec("C(5)^3"), CapabilityError);
  CHECK_THROWS_AS(parse_group_spec("C(0)"), DomainError);
  CHECK_THROWS_AS(parse_group_spec("perm(3){}"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("perm(3){(1,4)}"), Error);
  CHECK_THROWS_AS(parse_group_spec("A7 x"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("A7)"), ParseError);
  CHECK_THROWS_AS(build_group("H(4,1,1)"), DomainError);  // 4 is not prime
}

TEST_CASE("section-2 constants hold bit-exactly for degrees 7 through 12") {
  for (unsigned n = 7; n <= 12; ++n) {
    CAPTURE(n);
    auto G = build_group("A" + std::to_string(n));
    auto pp = paper_an_structure(n);
    auto mul = [&](const Element& a, const Element& b) { return G.multiply(a, b); };
    auto comm = [&](const Element& a, const Element& b) {
      return mul(mul(mul(a, b), G.invert(a)), G.invert(b));
    };
    if (n % 2) {
      // x1y1 = (1,3,4,2,5,...,n), the n-cycle of the text.
      CHECK(mul(pp.x1, pp.y1) ==
            G.parse_element("(1,3,4,2," + run(5, n).substr(1)));
      // x2y2 = (1,6,...,n,3,2), an (n-2)-cycle.
      CHECK(mul(pp.x2, pp.y2) ==
            G.parse_element("(1," + run(6, n).substr(1, run(6, n).size() - 2) +
                            ",3,2)"));
      CHECK(comm(pp.x2, pp.y2) ==
            G.parse_element("(1,5)(3," + std::to_string(n) + ")"));
    } else {
      // x1y1 = (1,3,5,...,n,2), an (n-1)-cycle fixing 4.
      CHECK(mul(pp.x1, pp.y1) ==
            G.parse_element("(1,3," + run(5, n).substr(1, run(5, n).size() - 2) +
                            ",2)"));
      CHECK(G.multiply(pp.x1, pp.y1).perm().at(3) == 3);  // point 4, 0-based
      // x2y2 = (3,5,...,n), an (n-3)-cycle.
      CHECK(mul(pp.x2, pp.y2) ==
            G.parse_element("(3," + run(5, n).substr(1)));
      CHECK(comm(pp.x2, mul(pp.y2, pp.y2)) ==
            G.parse_element("(2,5)(3," + std::to_string(n) + ")"));
    }
    // Both pairs generate and the sigma sets are disjoint.
    auto r = verify_structure(G, pp.x1, pp.y1, pp.x2, pp.y2);
    CHECK(r.ok);
  }
  CHECK_THROWS_AS(paper_an_structure(6), DomainError);
  CHECK_THROWS_AS(paper_an_structure(5), DomainError);
}

TEST_CASE("no symmetric-group element inverts the first pair simultaneously") {
  for (unsigned n = 7; n <= 12; ++n) {
    CAPTURE(n);
    auto pp = paper_an_structure(n);
    PermGroup sn(n, {Permutation::parse_cycles(n, "(1,2)"),
                     Permutation::parse_cycles(n, run(1, n))});
    const auto& x1 = pp.x1.perm();
    const auto& y1 = pp.y1.perm();
    auto t = simultaneous_transporter(sn, Ambient::Symmetric, x1, x1.inverse(),
                                      y1, y1.inverse());
    CHECK_FALSE(t.has_value());
  }
}

TEST_CASE("the degree-16 example reproduces the stated type") {
  auto G = paper_m11a5_group();
  auto pp = paper_m11a5_structure();
  CHECK(G.element_order(pp.x1) == 55);
  CHECK(G.element_order(pp.y1) == 55);
  CHECK(G.element_order(G.multiply(pp.x1, pp.y1)) == 55);
  CHECK(G.element_order(pp.x2) == 5);
  CHECK(G.element_order(pp.y2) == 5);
  CHECK(G.element_order(G.multiply(pp.x2, pp.y2)) == 5);
  auto r = verify_structure(G, pp.x1, pp.y1, pp.x2, pp.y2);
  REQUIRE(r.ok);
  CHECK(type_string(*r.type) == "((55,55,55),(5,5,5))");
}

TEST_CASE("GF(8) arithmetic forms a field with cyclic unit group") {
  std::set<uint8_t> powers;
  F8 t{2}, acc{1};
  for (int k = 0; k < 7; ++k) {
    acc = f8_mul(acc, t);
    powers.insert(acc.bits);
  }
  CHECK(powers.size() == 7);  // t generates the multiplicative group
  CHECK(acc.bits == 1);       // t^7 = 1
  for (uint8_t a = 0; a < 8; ++a) {
    CHECK(f8_add(F8{a}, F8{a}).bits == 0);  // characteristic 2
    for (uint8_t b = 0; b < 8; ++b)
      for (uint8_t c = 0; c < 8; ++c)
        CHECK(f8_mul(f8_add(F8{a}, F8{b}), F8{c}) ==
              f8_add(f8_mul(F8{a}, F8{c}), f8_mul(F8{b}, F8{c})));
  }
  for (uint8_t a = 1; a < 8; ++a) CHECK(f8_mul(F8{a}, f8_inv(F8{a})).bits == 1);
  CHECK_THROWS_AS(f8_inv(F8{0}), DomainError);
}

TEST_CASE("L2(8) has a single class of involutions") {
  auto G = build_group("L2(8)");
  std::set<std::string> labels;
  std::size_t involutions = 0;
  for (const auto& g : G.elements())
    if (G.element_order(g) == 2) {
      ++involutions;
      labels.insert(G.class_id(g).label);
    }
  CHECK(involutions == 63);  // q^2 - 1 for q = 8
  CHECK(labels.size() == 1);
}

TEST_CASE("every generating pair of L2(8) is inverted inside the group") {
  CHECK(macbeath_check());
}
