#include "bvl/aut.hpp"

#include <map>
#include <set>
#include <vector>

#include "doctest.h"

using namespace bvl;

namespace {

std::vector<AutMap> drain(const AutBackend& b, const GroupHandle& G) {
  auto s = make_aut_stream(b, G);
  std::vector<AutMap> out;
  while (auto m = s->next()) out.push_back(*m);
  return out;
}

// Full check against the multiplication table, independent of how the
// backend verified the map internally.
void check_is_automorphism(const GroupHandle& G, const AutMap& phi) {
  auto elements = G.elements();
  std::set<Element> image;
  for (const auto& a : elements) image.insert(apply_aut(G, phi, a));
  REQUIRE(image.size() == elements.size());
  for (const auto& a : elements)
    for (const auto& b : elements)
      REQUIRE(apply_aut(G, phi, G.multiply(a, b)) ==
              G.multiply(apply_aut(G, phi, a), apply_aut(G, phi, b)));
}

// Maps compare equal iff they agree on every element.
std::map<Element, Element> function_table(const GroupHandle& G, const AutMap& phi) {
  std::map<Element, Element> t;
  for (const auto& a : G.elements()) t[a] = apply_aut(G, phi, a);
  return t;
}

GroupHandle s3() {
  return GroupHandle::permutation(
      "S3", 3,
      {Permutation::parse_cycles(3, "(1,2)"), Permutation::parse_cycles(3, "(1,2,3)")},
      Ambient::Symmetric);
}

GroupHandle a5() {
  return GroupHandle::permutation(
      "A5", 5,
      {Permutation::parse_cycles(5, "(1,2,3)"), Permutation::parse_cycles(5, "(3,4,5)")},
      Ambient::Alternating);
}

GroupHandle dihedral8() {
  return GroupHandle::permutation(
      "D4", 4,
      {Permutation::parse_cycles(4, "(1,2,3,4)"), Permutation::parse_cycles(4, "(1,3)")});
}

GroupHandle m11() {
  return GroupHandle::permutation(
      "M11", 11,
      {Permutation::parse_cycles(11, "(1,2,3,4,5,6,7,8,9,10,11)"),
       Permutation::parse_cycles(11, "(1,5,3,4,10,2,8,9,11,6,7)")});
}

}  // namespace

TEST_CASE("exhaustive backend finds every automorphism of small groups") {
  auto G = s3();
  auto maps = drain(AutBackend::parse("exhaustive"), G);
  CHECK(maps.size() == 6);
  std::set<std::map<Element, Element>> distinct;
  for (const auto& m : maps) {
    check_is_automorphism(G, m);
    distinct.insert(function_table(G, m));
  }
  CHECK(distinct.size() == 6);
  CHECK(backend_info(AutBackend::parse("exhaustive"), G).exhaustive);

  auto D = dihedral8();
  auto dmaps = drain(AutBackend::parse("exhaustive"), D);
  CHECK(dmaps.size() == 8);
  for (const auto& m : dmaps) check_is_automorphism(D, m);

  auto V = GroupHandle::abelian("C(5,5)", 5, 5);
  auto vmaps = drain(AutBackend::parse("exhaustive"), V);
  CHECK(vmaps.size() == 480);  // |GL(2,5)|
  check_is_automorphism(V, vmaps.front());
  check_is_automorphism(V, vmaps.back());
}

TEST_CASE("exhaustive backend refuses large groups with the stated bound") {
  auto G = m11();
  CHECK_THROWS_AS(make_aut_stream(AutBackend::parse("exhaustive"), G),
                  CapabilityError);
  CHECK_THROWS_WITH_AS(backend_info(AutBackend::parse("exhaustive"), G),
                       doctest::Contains("2000"), CapabilityError);
}

TEST_CASE("inner stream yields one map per center coset") {
  auto D = dihedral8();  // |Z| = 2
  auto maps = drain(AutBackend::parse("inner"), D);
  CHECK(maps.size() == 4);
  std::set<std::map<Element, Element>> distinct;
  for (const auto& m : maps) {
    check_is_automorphism(D, m);
    distinct.insert(function_table(D, m));
  }
  CHECK(distinct.size() == 4);

  auto H = GroupHandle::heisenberg("H(3,1,1)", HeisParams::make(3, 1, 1));
  auto hmaps = drain(AutBackend::parse("inner"), H);
  CHECK(hmaps.size() == 9);  // 27 / |Z| with |Z| = 3
  for (const auto& m : hmaps) check_is_automorphism(H, m);

  auto A = a5();  // trivial center
  CHECK(drain(AutBackend::parse("inner"), A).size() == 60);

  auto C = GroupHandle::abelian("C(12)", 1, 12);
  auto cmaps = drain(AutBackend::parse("inner"), C);
  CHECK(cmaps.size() == 1);
  CHECK(apply_aut(C, cmaps[0], C.parse_element("[0,7]")) == C.parse_element("[0,7]"));
  CHECK_FALSE(backend_info(AutBackend::parse("inner"), C).exhaustive);
}

TEST_CASE("abelian inversion is the negation map and is witness-only") {
  auto V = GroupHandle::abelian("C(5,5)", 5, 5);
  auto maps = drain(AutBackend::parse("inversion"), V);
  REQUIRE(maps.size() == 1);
  CHECK(apply_aut(V, maps[0], V.parse_element("[1,2]")) == V.parse_element("[4,3]"));
  check_is_automorphism(V, maps[0]);
  CHECK_FALSE(backend_info(AutBackend::parse("inversion"), V).exhaustive);

  CHECK_THROWS_AS(backend_info(AutBackend::parse("inversion"), a5()),
                  CapabilityError);
}

TEST_CASE("heis-full stream enumerates the automorphism group exactly") {
  auto P = HeisParams::make(3, 1, 1);
  auto H = GroupHandle::heisenberg("H(3,1,1)", P);
  auto maps = drain(AutBackend::parse("heis-full"), H);
  CHECK(maps.size() == heis_aut_order(P));
  std::set<std::map<Element, Element>> distinct;
  for (const auto& m : maps) {
    check_is_automorphism(H, m);
    distinct.insert(function_table(H, m));
  }
  CHECK(distinct.size() == maps.size());
}

TEST_CASE("heis-full yields 12000 maps for the order-125 group") {
  auto P = HeisParams::make(5, 1, 1);
  auto H = GroupHandle::heisenberg("H(5,1,1)", P);
  auto s = make_aut_stream(AutBackend::parse("heis-full"), H);
  std::size_t count = 0;
  std::size_t spot_checked = 0;
  while (auto m = s->next()) {
    if (count < 40) {
      check_is_automorphism(H, *m);
      ++spot_checked;
    }
    ++count;
  }
  CHECK(count == 12000);
  CHECK(count == heis_aut_order(P));
  CHECK(spot_checked == 40);
  CHECK(backend_info(AutBackend::parse("heis-full"), H).exhaustive);
  CHECK_THROWS_AS(backend_info(AutBackend::parse("heis-full"), s3()),
                  CapabilityError);
}

TEST_CASE("declared symmetric conjugation covers Aut(A(n))") {
  auto A4 = GroupHandle::permutation(
      "A4", 4,
      {Permutation::parse_cycles(4, "(1,2,3)"), Permutation::parse_cycles(4, "(2,3,4)")},
      Ambient::Alternating);
  auto info = backend_info(AutBackend::parse("declared:S(4)"), A4);
  CHECK(info.exhaustive);
  REQUIRE(info.assumptions.size() == 1);
  CHECK(info.assumptions[0].find("S(n) conjugation") != std::string::npos);

  auto maps = drain(AutBackend::parse("declared:S(4)"), A4);
  CHECK(maps.size() == 24);
  std::set<std::map<Element, Element>> distinct;
  bool saw_ambient = false;
  for (const auto& m : maps) {
    check_is_automorphism(A4, m);
    distinct.insert(function_table(A4, m));
    if (m.kind == AutMap::Kind::Conjugation && m.conj.perm().parity() == 1)
      saw_ambient = true;
  }
  CHECK(distinct.size() == 24);  // half are outer, realized by odd conjugators
  CHECK(saw_ambient);
}

TEST_CASE("declared backends validate their target group") {
  auto A6 = GroupHandle::permutation(
      "A6", 6,
      {Permutation::parse_cycles(6, "(1,2,3)"), Permutation::parse_cycles(6, "(2,3,4,5,6)")},
      Ambient::Alternating);
  CHECK_THROWS_WITH_AS(backend_info(AutBackend::parse("declared:S(6)"), A6),
                       doctest::Contains("exceptional outer automorphism"),
                       CapabilityError);
  CHECK_THROWS_AS(AutBackend::automatic(A6), CapabilityError);

  CHECK_THROWS_AS(backend_info(AutBackend::parse("declared:M11"), a5()),
                  CapabilityError);
  CHECK_THROWS_AS(backend_info(AutBackend::parse("declared:X99"), a5()),
                  CapabilityError);
  CHECK_THROWS_AS(backend_info(AutBackend::parse("declared:S(5)"), s3()),
                  CapabilityError);

  auto M = m11();
  auto info = backend_info(AutBackend::parse("declared:M11"), M);
  CHECK(info.exhaustive);
  REQUIRE(info.assumptions.size() == 1);
  CHECK(info.assumptions[0] == "Out(M11) is trivial");
}

TEST_CASE("declared:M11 streams the 7920 inner maps") {
  auto M = m11();
  auto s = make_aut_stream(AutBackend::parse("declared:M11"), M);
  std::size_t count = 0;
  while (s->next()) ++count;
  CHECK(count == 7920);
}

TEST_CASE("product backend composes factor streams componentwise") {
  auto G = GroupHandle::product(
      "C(4) x C(3)",
      {GroupHandle::abelian("C(4)", 1, 4), GroupHandle::abelian("C(3)", 1, 3)});
  auto b = AutBackend::parse("product(exhaustive,exhaustive)");
  auto info = backend_info(b, G);
  CHECK(info.exhaustive);
  REQUIRE(info.assumptions.size() == 1);
  CHECK(info.assumptions[0] == "factor orders are pairwise coprime");

  auto maps = drain(b, G);
  CHECK(maps.size() == 4);  // |Aut(C4)| * |Aut(C3)| = 2 * 2
  std::set<std::map<Element, Element>> distinct;
  for (const auto& m : maps) {
    check_is_automorphism(G, m);
    distinct.insert(function_table(G, m));
    REQUIRE(m.kind == AutMap::Kind::Tuple);
    auto g = G.parse_element("<[0,3] | [0,2]>");
    auto img = apply_aut(G, m, g);
    CHECK(img.tuple()[0] ==
          apply_aut((*G.factors())[0], m.components[0], g.tuple()[0]));
    CHECK(img.tuple()[1] ==
          apply_aut((*G.factors())[1], m.components[1], g.tuple()[1]));
  }
  CHECK(distinct.size() == 4);
}

TEST_CASE("product applicability needs coprime orders or declared factors") {
  // M11 x A5: orders 7920 and 60 share factors, but both are declared
  // indecomposable and non-isomorphic.
  auto G = GroupHandle::product("M11 x A5", {m11(), a5()});
  auto b = AutBackend::parse("product(declared:M11,declared:S(5))");
  auto info = backend_info(b, G);
  CHECK(info.exhaustive);
  REQUIRE(info.assumptions.size() == 3);
  CHECK(info.assumptions[0].find("directly indecomposable") != std::string::npos);

  // A5 x A5 is neither coprime nor pairwise non-isomorphic.
  auto H = GroupHandle::product("A5 x A5", {a5(), a5()});
  CHECK_THROWS_AS(backend_info(AutBackend::parse("product(inner,inner)"), H),
                  CapabilityError);

  // D4 x C(2): not coprime and D4 is not a declared indecomposable atom.
  auto D = GroupHandle::product(
      "D4 x C(2)", {dihedral8(), GroupHandle::abelian("C(2)", 1, 2)});
  CHECK_THROWS_AS(backend_info(AutBackend::parse("product(inner,inner)"), D),
                  CapabilityError);

  // Wrong arity.
  CHECK_THROWS_AS(backend_info(AutBackend::parse("product(inner,inner,inner)"), G),
                  CapabilityError);
  // Product selector on a non-product group.
  CHECK_THROWS_AS(backend_info(AutBackend::parse("product(inner,inner)"), a5()),
                  CapabilityError);

  auto exhausted_product = drain(
      AutBackend::parse("product(exhaustive,exhaustive)"),
      GroupHandle::product("C(2) x C(9)", {GroupHandle::abelian("C(2)", 1, 2),
                                           GroupHandle::abelian("C(9)", 1, 9)}));
  CHECK(exhausted_product.size() == 6);  // 1 * |Aut(C9)| = 6
}

TEST_CASE("selector strings parse and render round trip") {
  for (const char* s :
       {"inner", "inversion", "heis-full", "exhaustive", "declared:M11",
        "declared:S(7)", "product(inner,declared:M11)",
        "product(heis-full,product(inner,inversion))"}) {
    CHECK(AutBackend::parse(s).selector() == s);
  }
  CHECK_THROWS_AS(AutBackend::parse("outer"), ParseError);
  CHECK_THROWS_AS(AutBackend::parse("declared:"), ParseError);
  CHECK_THROWS_AS(AutBackend::parse("product(inner)"), ParseError);
  CHECK_THROWS_AS(AutBackend::parse("product(inner,)"), ParseError);
}

TEST_CASE("automatic backend selection follows the group shape") {
  CHECK(AutBackend::automatic(
            GroupHandle::heisenberg("H", HeisParams::make(5, 1, 1)))
            .selector() == "heis-full");
  CHECK(AutBackend::automatic(GroupHandle::abelian("C", 5, 5)).selector() ==
        "inversion");
  auto A7 = GroupHandle::permutation(
      "A7", 7,
      {Permutation::parse_cycles(7, "(1,2,3)"),
       Permutation::parse_cycles(7, "(1,2,3,4,5,6,7)")},
      Ambient::Alternating);
  CHECK(AutBackend::automatic(A7).selector() == "declared:S(7)");
  CHECK(AutBackend::automatic(m11()).selector() == "declared:M11");
  CHECK(AutBackend::automatic(s3()).selector() == "exhaustive");
  CHECK(AutBackend::automatic(
            GroupHandle::product("P", {GroupHandle::abelian("C(4)", 1, 4),
                                       GroupHandle::abelian("C(3)", 1, 3)}))
            .selector() == "product(inversion,inversion)");
}

TEST_CASE("streams restart from scratch") {
  auto V = GroupHandle::abelian("C(3,3)", 3, 3);
  auto b = AutBackend::parse("exhaustive");
  auto first = drain(b, V);
  auto second = drain(b, V);
  REQUIRE(first.size() == second.size());
  CHECK(first.size() == 48);  // |GL(2,3)|
  for (std::size_t i = 0; i < first.size(); ++i)
    CHECK(function_table(V, first[i]) == function_table(V, second[i]));
}

TEST_CASE("describe_aut names the map in group terms") {
  auto V = GroupHandle::abelian("C(5,5)", 5, 5);
  CHECK(describe_aut(V, AutMap::inversion()) == "inversion");
  CHECK(describe_aut(V, AutMap::identity()) == "identity");
  auto H = GroupHandle::heisenberg("H", HeisParams::make(5, 1, 1));
  auto phi = haut_from_pair(HeisParams::make(5, 1, 1), Triple{1, 2, 0}, Triple{3, 4, 0});
  CHECK(describe_aut(H, AutMap::heis_pair(phi)) == "x -> (1,2,0), y -> (3,4,0)");
  auto A = a5();
  auto g = A.parse_element("(1,2,3)");
  CHECK(describe_aut(A, AutMap::conjugation(g)) == "conjugation by (1,2,3)");
}
