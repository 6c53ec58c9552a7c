#include "bvl/conjugacy.hpp"

#include <algorithm>
#include <deque>

namespace bvl {

namespace {

GroupOrder factorial(unsigned n) {
  GroupOrder f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

// Cycles rotated to start at their smallest point, sorted longest first and
// by starting point within a length; the canonical alignment for conjugator
// construction.
std::vector<std::vector<unsigned>> aligned_cycles(const Permutation& p) {
  auto cs = p.cycles(true);
  for (auto& c : cs) {
    auto mn = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), mn, c.end());
  }
  std::sort(cs.begin(), cs.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() > y.size();
    return x.front() < y.front();
  });
  return cs;
}

}  // namespace

std::map<Permutation, Permutation> conjugacy_class_with_paths(const PermGroup& G,
                                                              const Permutation& g,
                                                              const Bounds& bounds) {
  if (!G.contains(g)) throw DomainError("class requested for a non-member");
  std::map<Permutation, Permutation> orbit;
  std::deque<Permutation> queue;
  orbit.emplace(g, Permutation(g.degree()));
  queue.push_back(g);
  while (!queue.empty()) {
    Permutation cur = std::move(queue.front());
    queue.pop_front();
    const Permutation& path = orbit.at(cur);
    for (const auto& s : G.generators()) {
      Permutation img = conjugate(cur, s);
      if (orbit.count(img)) continue;
      if (orbit.size() >= bounds.orbit_limit)
        throw CapabilityError("conjugation orbit exceeds bound " +
                              std::to_string(bounds.orbit_limit));
      Permutation word = compose(s, path);  // g^(s*path) = (g^path)^s
      orbit.emplace(img, std::move(word));
      queue.push_back(std::move(img));
    }
  }
  return orbit;
}

std::vector<Permutation> conjugacy_class(const PermGroup& G, const Permutation& g,
                                         const Bounds& bounds) {
  auto with_paths = conjugacy_class_with_paths(G, g, bounds);
  std::vector<Permutation> out;
  out.reserve(with_paths.size());
  for (const auto& [m, u] : with_paths) out.push_back(m);
  return out;
}

bool alternating_class_splits(const std::vector<unsigned>& type) {
  for (std::size_t i = 0; i < type.size(); ++i) {
    if (type[i] % 2 == 0) return false;
    if (i + 1 < type.size() && type[i] == type[i + 1]) return false;
  }
  return true;
}

Permutation canonical_type_rep(unsigned degree, const std::vector<unsigned>& type) {
  std::vector<unsigned> img(degree);
  unsigned next = 0;
  for (unsigned len : type) {
    for (unsigned k = 0; k < len; ++k)
      img[next + k] = next + (k + 1) % len;
    next += len;
  }
  if (next != degree) throw DomainError("cycle type does not sum to the degree");
  return Permutation::from_images(std::move(img));
}

int alternating_split_bit(const Permutation& p) {
  auto type = p.cycle_type();
  if (!alternating_class_splits(type)) return 0;
  return matching_conjugator(canonical_type_rep(p.degree(), type), p).parity();
}

bool an_conjugacy_test(unsigned n, const Permutation& a, const Permutation& b) {
  if (a.degree() != n || b.degree() != n)
    throw DomainError("degree mismatch in alternating conjugacy test");
  if (a.parity() != 0 || b.parity() != 0)
    throw DomainError("alternating conjugacy test requires even permutations");
  auto ta = a.cycle_type();
  if (ta != b.cycle_type()) return false;
  if (!alternating_class_splits(ta)) return true;
  return matching_conjugator(a, b).parity() == 0;
}

GroupOrder symmetric_centralizer_order(const Permutation& p) {
  auto type = p.cycle_type();
  GroupOrder total = 1;
  for (std::size_t i = 0; i < type.size();) {
    std::size_t j = i;
    while (j < type.size() && type[j] == type[i]) ++j;
    std::size_t mult = j - i;
    for (std::size_t k = 0; k < mult; ++k) total *= type[i];
    total *= factorial(static_cast<unsigned>(mult));
    i = j;
  }
  return total;
}

std::vector<Permutation> symmetric_centralizer_gens(const Permutation& p) {
  const unsigned n = p.degree();
  auto cs = aligned_cycles(p);
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].size() > 1) {
      std::vector<unsigned> img(n);
      for (unsigned x = 0; x < n; ++x) img[x] = x;
      for (std::size_t k = 0; k < cs[i].size(); ++k)
        img[cs[i][k]] = cs[i][(k + 1) % cs[i].size()];
      gens.push_back(Permutation::from_images(std::move(img)));
    }
    if (i + 1 < cs.size() && cs[i].size() == cs[i + 1].size()) {
      std::vector<unsigned> img(n);
      for (unsigned x = 0; x < n; ++x) img[x] = x;
      for (std::size_t k = 0; k < cs[i].size(); ++k) {
        img[cs[i][k]] = cs[i + 1][k];
        img[cs[i + 1][k]] = cs[i][k];
      }
      gens.push_back(Permutation::from_images(std::move(img)));
    }
  }
  if (gens.empty()) gens.push_back(Permutation(n));
  return gens;
}

std::vector<Permutation> even_subgroup_gens(const std::vector<Permutation>& gens) {
  std::vector<Permutation> even, odd;
  for (const auto& g : gens)
    (g.parity() == 0 ? even : odd).push_back(g);
  if (odd.empty()) return even.empty() ? std::vector<Permutation>{} : even;
  const Permutation& t = odd.front();
  for (const auto& o : odd) even.push_back(compose(t, o));
  return even;
}

Permutation matching_conjugator(const Permutation& a, const Permutation& b) {
  if (a.cycle_type() != b.cycle_type())
    throw DomainError("matching conjugator requires equal cycle types");
  auto ca = aligned_cycles(a);
  auto cb = aligned_cycles(b);
  std::vector<unsigned> img(a.degree());
  for (std::size_t i = 0; i < ca.size(); ++i)
    for (std::size_t k = 0; k < ca[i].size(); ++k)
      img[cb[i][k]] = ca[i][k];  // t maps b's points onto a's, so a^t = b
  return Permutation::from_images(std::move(img));
}

std::vector<Permutation> centralizer_in_group(const PermGroup& G, Ambient amb,
                                              const Permutation& g,
                                              const Bounds& bounds) {
  if (amb == Ambient::Alternating && g.parity() != 0)
    throw DomainError("odd permutation is not a member of the alternating group");
  if (amb == Ambient::Symmetric) return symmetric_centralizer_gens(g);
  if (amb == Ambient::Alternating) {
    auto evens = even_subgroup_gens(symmetric_centralizer_gens(g));
    if (evens.empty()) evens.push_back(Permutation(g.degree()));
    return evens;
  }
  if (symmetric_centralizer_order(g) <= static_cast<GroupOrder>(bounds.centralizer_limit)) {
    auto ambient = closure_elements(g.degree(), symmetric_centralizer_gens(g),
                                    bounds.centralizer_limit);
    std::vector<Permutation> kept;
    for (auto& c : ambient)
      if (G.contains(c)) kept.push_back(std::move(c));
    return kept;
  }
  if (G.order() <= static_cast<GroupOrder>(bounds.enumeration_limit)) {
    std::vector<Permutation> kept;
    for (auto& e : G.elements(bounds.enumeration_limit))
      if (conjugate(g, e) == g) kept.push_back(std::move(e));
    return kept;
  }
  throw CapabilityError("centralizer of " + g.str() +
                        " is out of reach: ambient order " +
                        order_to_string(symmetric_centralizer_order(g)) +
                        ", group order " + order_to_string(G.order()));
}

Transporter transporter(const PermGroup& G, Ambient amb, const Permutation& a,
                        const Permutation& b, const Bounds& bounds) {
  Transporter out;
  if (amb == Ambient::Symmetric || amb == Ambient::Alternating) {
    out.centralizer_gens = centralizer_in_group(G, amb, b, bounds);
    if (a.cycle_type() != b.cycle_type()) return out;
    Permutation t = matching_conjugator(a, b);
    if (amb == Ambient::Symmetric || t.parity() == 0) {
      out.representative = std::move(t);
      return out;
    }
    // Split-class repair: an odd centralizing element of b flips parity.
    for (const auto& s : symmetric_centralizer_gens(b))
      if (s.parity() == 1) {
        out.representative = compose(s, t);
        return out;
      }
    return out;  // class splits and the matching conjugator is odd
  }
  if (!G.contains(b)) throw DomainError("transporter target is not a member");
  auto orbit = conjugacy_class_with_paths(G, a, bounds);
  auto hit = orbit.find(b);
  if (hit != orbit.end()) out.representative = hit->second;
  out.centralizer_gens = centralizer_in_group(G, amb, b, bounds);
  return out;
}

std::optional<Permutation> simultaneous_transporter(const PermGroup& G, Ambient amb,
                                                    const Permutation& a,
                                                    const Permutation& a2,
                                                    const Permutation& b,
                                                    const Permutation& b2,
                                                    const Bounds& bounds) {
  const Permutation *fa = &a, *fa2 = &a2, *sb = &b, *sb2 = &b2;
  if (symmetric_centralizer_order(b2) < symmetric_centralizer_order(a2)) {
    std::swap(fa, sb);
    std::swap(fa2, sb2);
  }
  Transporter first = transporter(G, amb, *fa, *fa2, bounds);
  if (!first.representative) return std::nullopt;
  const Permutation& t = *first.representative;
  // Solutions are c*t with c in C_G(fa2); walk the orbit of sb^t under the
  // centralizer until sb2 appears.
  Permutation start = conjugate(*sb, t);
  std::map<Permutation, Permutation> orbit{{start, Permutation(a.degree())}};
  std::deque<Permutation> queue{start};
  while (!queue.empty()) {
    Permutation cur = std::move(queue.front());
    queue.pop_front();
    Permutation path = orbit.at(cur);
    if (cur == *sb2) return compose(path, t);
    for (const auto& s : first.centralizer_gens) {
      Permutation img = conjugate(cur, s);
      if (orbit.count(img)) continue;
      if (orbit.size() >= bounds.orbit_limit)
        throw CapabilityError("centralizer orbit exceeds bound " +
                              std::to_string(bounds.orbit_limit));
      orbit.emplace(img, compose(s, path));
      queue.push_back(std::move(img));
    }
  }
  return std::nullopt;
}

}  // namespace bvl
