#include "bvl/perm_group.hpp"

#include <algorithm>
#include <set>

namespace bvl {

PermGroup::PermGroup(unsigned degree, std::vector<Permutation> generators)
    : degree_(degree), gens_(std::move(generators)) {
  for (const auto& g : gens_)
    if (g.degree() != degree_)
      throw DomainError("generator degree " + std::to_string(g.degree()) +
                        " does not match group degree " + std::to_string(degree_));
}

const PermGroup::Chain& PermGroup::chain() const {
  std::call_once(built_, [this] { build(); });
  return chain_;
}

void PermGroup::recompute_orbit(Chain& c, std::size_t l) const {
  c.orbit[l].clear();
  c.pos[l].assign(degree_, -1);
  c.trans[l].assign(degree_, Permutation());
  unsigned b = c.base[l];
  c.orbit[l].push_back(b);
  c.pos[l][b] = 0;
  c.trans[l][b] = Permutation(degree_);
  for (std::size_t head = 0; head < c.orbit[l].size(); ++head) {
    unsigned pt = c.orbit[l][head];
    for (const auto& s : c.gens[l]) {
      unsigned img = s.at(pt);
      if (c.pos[l][img] < 0) {
        c.pos[l][img] = static_cast<int>(c.orbit[l].size());
        c.orbit[l].push_back(img);
        c.trans[l][img] = compose(c.trans[l][pt], s);
      }
    }
  }
}

std::pair<Permutation, std::size_t> PermGroup::strip(const Chain& c, Permutation g,
                                                     std::size_t from) const {
  for (std::size_t l = from; l < c.base.size(); ++l) {
    unsigned img = g.at(c.base[l]);
    if (c.pos[l][img] < 0) return {std::move(g), l};
    g = compose(g, c.trans[l][img].inverse());
  }
  return {std::move(g), c.base.size()};
}

void PermGroup::build() const {
  Chain c;
  std::vector<Permutation> start;
  for (const auto& g : gens_)
    if (!g.is_identity()) start.push_back(g);
  if (start.empty()) {
    c.order = 1;
    chain_ = std::move(c);
    return;
  }

  auto smallest_moved = [this](const Permutation& g) {
    for (unsigned i = 0; i < degree_; ++i)
      if (g.at(i) != i) return i;
    throw Error("identity reached smallest_moved");
  };
  auto add_level = [&](unsigned point) {
    c.base.push_back(point);
    c.gens.emplace_back();
    c.orbit.emplace_back();
    c.pos.emplace_back();
    c.trans.emplace_back();
  };

  // Seed: every generator must move some base point.
  add_level(smallest_moved(start.front()));
  for (const auto& g : start) {
    bool fixes_all = true;
    for (unsigned b : c.base)
      if (g.at(b) != b) {
        fixes_all = false;
        break;
      }
    if (fixes_all) add_level(smallest_moved(g));
  }
  c.gens[0] = start;
  for (std::size_t l = 1; l < c.base.size(); ++l)
    for (const auto& g : start) {
      bool fixes = true;
      for (std::size_t m = 0; m < l; ++m)
        if (g.at(c.base[m]) != c.base[m]) {
          fixes = false;
          break;
        }
      if (fixes) c.gens[l].push_back(g);
    }

  // Bottom-up Schreier-Sims: level i is consistent once every Schreier
  // generator of its orbit sifts to the identity through deeper levels.
  // Processing deepest-first keeps every level below i current.
  std::size_t i = c.base.size() - 1;
  while (true) {
    recompute_orbit(c, i);
    bool complete = true;
    for (std::size_t oi = 0; complete && oi < c.orbit[i].size(); ++oi) {
      unsigned beta = c.orbit[i][oi];
      for (const auto& s : c.gens[i]) {
        Permutation schreier =
            compose(compose(c.trans[i][beta], s), c.trans[i][s.at(beta)].inverse());
        if (schreier.is_identity()) continue;
        auto [h, j] = strip(c, schreier, i + 1);
        if (h.is_identity()) continue;
        if (j == c.base.size()) add_level(smallest_moved(h));
        for (std::size_t l = i + 1; l <= j; ++l) c.gens[l].push_back(h);
        i = j;
        complete = false;
        break;
      }
    }
    if (!complete) continue;
    if (i == 0) break;
    --i;
  }

  c.order = 1;
  for (std::size_t l = 0; l < c.base.size(); ++l)
    c.order *= static_cast<GroupOrder>(c.orbit[l].size());
  chain_ = std::move(c);
}

GroupOrder PermGroup::order() const { return chain().order; }

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_)
    throw DomainError("membership test with mismatched degree");
  auto [res, lvl] = strip(chain(), p, 0);
  return lvl == chain().base.size() && res.is_identity();
}

std::vector<Permutation> PermGroup::elements(std::size_t limit) const {
  const Chain& c = chain();
  if (c.order > static_cast<GroupOrder>(limit))
    throw CapabilityError("group order " + order_to_string(c.order) +
                          " exceeds enumeration limit " + std::to_string(limit));
  std::vector<Permutation> out{Permutation(degree_)};
  // Left-to-right products: deepest transversal first, level 0 last.
  for (std::size_t l = c.base.size(); l-- > 0;) {
    std::vector<Permutation> next;
    next.reserve(out.size() * c.orbit[l].size());
    for (const auto& e : out)
      for (unsigned pt : c.orbit[l]) next.push_back(compose(e, c.trans[l][pt]));
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Permutation PermGroup::random_element(std::mt19937_64& rng) const {
  const Chain& c = chain();
  Permutation g(degree_);
  for (std::size_t l = c.base.size(); l-- > 0;) {
    unsigned pt = c.orbit[l][uniform_index(rng, c.orbit[l].size())];
    g = compose(g, c.trans[l][pt]);
  }
  return g;
}

std::vector<Permutation> closure_elements(unsigned degree,
                                          const std::vector<Permutation>& gens,
                                          std::size_t limit) {
  std::set<Permutation> seen{Permutation(degree)};
  std::vector<Permutation> frontier{Permutation(degree)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& e : frontier)
      for (const auto& g : gens) {
        Permutation prod = compose(e, g);
        if (seen.insert(prod).second) {
          if (seen.size() > limit)
            throw CapabilityError("closure enumeration exceeded limit " +
                                  std::to_string(limit));
          next.push_back(std::move(prod));
        }
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  if (n <= 1) return 0;
  const uint64_t bound = std::mt19937_64::max() - std::mt19937_64::max() % n;
  uint64_t draw;
  do {
    draw = rng();
  } while (draw >= bound);
  return static_cast<std::size_t>(draw % n);
}

}  // namespace bvl
