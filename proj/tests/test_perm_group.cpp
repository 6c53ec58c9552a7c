#include "bvl/perm_group.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "bvl/common.hpp"
#include "doctest.h"

using namespace bvl;

namespace {

PermGroup make(unsigned degree, std::initializer_list<const char*> cycles) {
  std::vector<Permutation> gens;
  for (const char* c : cycles) gens.push_back(Permutation::parse_cycles(degree, c));
  return PermGroup(degree, gens);
}

}  // namespace

TEST_CASE("chain order matches closure enumeration on small groups") {
  struct Case {
    unsigned degree;
    std::vector<const char*> gens;
    GroupOrder order;
  };
  const std::vector<Case> cases = {
      {5, {"(1,2,3,4,5)", "(3,4,5)"}, 60},
      {5, {"(1,2)", "(1,2,3,4,5)"}, 120},
      {4, {"(1,2,3)", "(2,3,4)"}, 12},
      {7, {"(1,2,4)", "(1,2,3,4,5,6,7)"}, 2520},
      {6, {"(1,2,3,4,5,6)"}, 6},
      {8, {"(1,2)(3,4)", "(5,6,7,8)"}, 8},
  };
  for (const auto& c : cases) {
    std::vector<Permutation> gens;
    for (const char* s : c.gens) gens.push_back(Permutation::parse_cycles(c.degree, s));
    PermGroup g(c.degree, gens);
    CHECK(g.order() == c.order);
    auto closed = closure_elements(c.degree, gens, 100000);
    CHECK(closed.size() == static_cast<std::size_t>(c.order));
    for (const auto& e : closed) CHECK(g.contains(e));
  }
}

TEST_CASE("eleven-point generators produce a group of order 7920") {
  auto g = make(11, {"(1,2,3,4,5,6,7,8,9,10,11)", "(1,5,3,4,10,2,8,9,11,6,7)"});
  CHECK(g.order() == 7920);  // 11 * 5 * 3^2 * 2^4
  CHECK(g.contains(Permutation::parse_cycles(11, "(1,2,3,4,5,6,7,8,9,10,11)")));
  CHECK(!g.contains(Permutation::parse_cycles(11, "(1,2)")));
}

TEST_CASE("sixteen-point pair generates the order-475200 product") {
  auto g = make(16, {"(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16)",
                     "(1,5,3,4,10,2,8,9,11,6,7)(12,14,15,13,16)"});
  CHECK(g.order() == 475200);  // 7920 * 60
}

TEST_CASE("trivial and identity-only groups") {
  PermGroup t(4, {});
  CHECK(t.order() == 1);
  CHECK(t.contains(Permutation(4)));
  CHECK(!t.contains(Permutation::parse_cycles(4, "(1,2)")));
  PermGroup id(4, {Permutation(4)});
  CHECK(id.order() == 1);
}

TEST_CASE("element enumeration is sorted, complete and bounded") {
  auto g = make(5, {"(1,2,3,4,5)", "(3,4,5)"});
  auto els = g.elements(100);
  CHECK(els.size() == 60);
  CHECK(std::is_sorted(els.begin(), els.end()));
  auto closed = closure_elements(5, g.generators(), 100);
  CHECK(els == closed);
  CHECK_THROWS_AS(g.elements(59), CapabilityError);
  CHECK_THROWS_AS(closure_elements(5, g.generators(), 59), CapabilityError);
}

TEST_CASE("membership agrees with closure on every element and non-element") {
  auto g = make(6, {"(1,2,3)(4,5,6)", "(1,4)(2,5)(3,6)"});
  auto inside = closure_elements(6, g.generators(), 1000);
  CHECK(g.order() == inside.size());
  std::set<Permutation> in_set(inside.begin(), inside.end());
  auto all = closure_elements(
      6, {Permutation::parse_cycles(6, "(1,2)"), Permutation::parse_cycles(6, "(1,2,3,4,5,6)")},
      1000);
  for (const auto& e : all) CHECK(g.contains(e) == (in_set.count(e) > 0));
}

TEST_CASE("random sampling is deterministic per seed and lands in the group") {
  auto g = make(11, {"(1,2,3,4,5,6,7,8,9,10,11)", "(1,5,3,4,10,2,8,9,11,6,7)"});
  std::mt19937_64 a(7), b(7), c(8);
  bool diverged = false;
  for (int k = 0; k < 50; ++k) {
    auto x = g.random_element(a);
    CHECK(g.contains(x));
    CHECK(x == g.random_element(b));
    if (x != g.random_element(c)) diverged = true;
  }
  CHECK(diverged);
}

TEST_CASE("uniform sampling covers a small group evenly") {
  auto g = make(4, {"(1,2,3)", "(2,3,4)"});  // order 12
  std::mt19937_64 rng(123);
  std::map<Permutation, int> counts;
  const int draws = 12000;
  for (int k = 0; k < draws; ++k) ++counts[g.random_element(rng)];
  CHECK(counts.size() == 12);
  for (const auto& [p, n] : counts) CHECK(std::abs(n - 1000) < 200);
}
