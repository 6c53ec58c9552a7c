#include "bvl/engine.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <thread>

#include "bvl/conjugacy.hpp"

namespace bvl {

namespace {

void refuse_a6(const GroupHandle& G) {
  if (G.kind() == BackendKind::Permutation &&
      G.perm_ambient() == Ambient::Alternating && G.perm_group()->degree() == 6)
    throw CapabilityError(
        "A(6) is excluded: its exceptional outer automorphism falls outside "
        "every supported automorphism backend");
}

Element pair_conj(const GroupHandle& G, const Element& g, const Element& h) {
  return G.conjugate_by(g, h);
}

// c in G with x^c = x^-1 and y^c = y^-1, one pair at a time. An inner phi
// composes with the pair's g into a single conjugator, so this settles the
// inner backend without touching any stream.
std::optional<Element> inner_pair_conjugator(const GroupHandle& G,
                                             const Element& x, const Element& y) {
  switch (G.kind()) {
    case BackendKind::Permutation: {
      auto c = simultaneous_transporter(*G.perm_group(), G.perm_ambient(),
                                        x.perm(), x.perm().inverse(), y.perm(),
                                        y.perm().inverse(), G.bounds());
      if (!c) return std::nullopt;
      return Element(*c);
    }
    case BackendKind::Abelian:
      if (x == G.invert(x) && y == G.invert(y)) return G.identity();
      return std::nullopt;
    case BackendKind::Heisenberg: {
      Element xi = G.invert(x), yi = G.invert(y);
      for (const auto& h : G.elements())
        if (pair_conj(G, x, h) == xi && pair_conj(G, y, h) == yi) return h;
      return std::nullopt;
    }
    case BackendKind::Product: {
      const auto& factors = *G.factors();
      ProductTuple parts;
      for (std::size_t f = 0; f < factors.size(); ++f) {
        auto c = inner_pair_conjugator(factors[f], x.tuple()[f], y.tuple()[f]);
        if (!c) return std::nullopt;
        parts.push_back(*c);
      }
      return Element(std::move(parts));
    }
  }
  throw Error("unreachable backend tag");
}

SrResult finish_witness(const GroupHandle& G, const BeauvilleStructure& s,
                        RealityWitness w, std::string selector,
                        AutBackendInfo info) {
  check_witness(G, s, w);
  SrResult r;
  r.status = SrStatus::Witnessed;
  r.witness = std::move(w);
  r.backend_selector = std::move(selector);
  r.backend = std::move(info);
  return r;
}

SrResult finish_empty(SrStatus fallback, std::string selector,
                      AutBackendInfo info) {
  SrResult r;
  r.status = info.exhaustive ? SrStatus::ExhaustedNonReal : fallback;
  r.backend_selector = std::move(selector);
  r.backend = std::move(info);
  return r;
}

SrResult inner_sr(const GroupHandle& G, const BeauvilleStructure& s,
                  std::string selector, AutBackendInfo info) {
  auto c1 = inner_pair_conjugator(G, s.p1.x, s.p1.y);
  auto c2 = inner_pair_conjugator(G, s.p2.x, s.p2.y);
  if (c1 && c2) {
    RealityWitness w{AutMap::conjugation(*c1), G.identity(),
                     G.multiply(*c2, G.invert(*c1))};
    return finish_witness(G, s, std::move(w), std::move(selector),
                          std::move(info));
  }
  return finish_empty(SrStatus::Indeterminate, std::move(selector),
                      std::move(info));
}

SrResult inversion_sr(const GroupHandle& G, const BeauvilleStructure& s,
                      std::string selector, AutBackendInfo info) {
  RealityWitness w{AutMap::inversion(), G.identity(), G.identity()};
  return finish_witness(G, s, std::move(w), std::move(selector),
                        std::move(info));
}

// Simultaneous-inversion solutions for one pair inside the full symmetric
// group: a transporter representative plus which parities the solution coset
// C(x) n C(y) * c0 reaches.
struct SnSolutions {
  std::optional<Permutation> even, odd;
};

SnSolutions sn_inversion_solutions(const PermGroup& sn, const Permutation& x,
                                   const Permutation& y, const Bounds& bounds) {
  SnSolutions out;
  auto c0 = simultaneous_transporter(sn, Ambient::Symmetric, x, x.inverse(), y,
                                     y.inverse(), bounds);
  if (!c0) return out;
  const Permutation* small = &x;
  const Permutation* other = &y;
  if (symmetric_centralizer_order(y) < symmetric_centralizer_order(x))
    std::swap(small, other);
  if (symmetric_centralizer_order(*small) > bounds.centralizer_limit)
    throw CapabilityError("joint centralizer is beyond the centralizer bound");
  auto base = closure_elements(x.degree(), symmetric_centralizer_gens(*small),
                               bounds.centralizer_limit);
  for (const auto& d : base) {
    if (conjugate(*other, d) != *other) continue;
    Permutation c = compose(d, *c0);
    (c.parity() == 0 ? out.even : out.odd) = c;
    if (out.even && out.odd) break;
  }
  return out;
}

SrResult declared_sn_sr(const GroupHandle& G, const BeauvilleStructure& s,
                        std::string selector, AutBackendInfo info) {
  unsigned n = G.perm_group()->degree();
  std::vector<Permutation> sgens{Permutation::parse_cycles(n, "(1,2)")};
  std::vector<unsigned> img(n);
  for (unsigned i = 0; i < n; ++i) img[i] = (i + 1) % n;
  sgens.push_back(Permutation::from_images(img));
  PermGroup sn(n, sgens);

  auto s1 = sn_inversion_solutions(sn, s.p1.x.perm(), s.p1.y.perm(), G.bounds());
  auto s2 = sn_inversion_solutions(sn, s.p2.x.perm(), s.p2.y.perm(), G.bounds());
  // phi = conjugation by c1 with g1 = e demands c2 * c1^-1 even, i.e. equal
  // parities across the two pairs.
  const Permutation* c1 = nullptr;
  const Permutation* c2 = nullptr;
  if (s1.even && s2.even) {
    c1 = &*s1.even;
    c2 = &*s2.even;
  } else if (s1.odd && s2.odd) {
    c1 = &*s1.odd;
    c2 = &*s2.odd;
  }
  if (!c1) {
    return finish_empty(SrStatus::Indeterminate, std::move(selector),
                        std::move(info));
  }
  RealityWitness w{AutMap::conjugation(Element(*c1), true), G.identity(),
                   Element(compose(*c2, c1->inverse()))};
  return finish_witness(G, s, std::move(w), std::move(selector),
                        std::move(info));
}

// Move the first pair onto (x, y), solve the congruence for the image of the
// second pair, then conjugate the witness back through the normalizing map.
SrResult heis_sr(const GroupHandle& G, const BeauvilleStructure& s,
                 std::string selector, AutBackendInfo info) {
  const HeisParams& P = *G.heis_params();
  HeisAut psi = haut_from_pair(P, s.p1.x.heis(), s.p1.y.heis());
  HeisAut psi_inv = haut_inverse(P, psi);
  Triple u2 = haut_apply(P, psi_inv, s.p2.x.heis());
  Triple v2 = haut_apply(P, psi_inv, s.p2.y.heis());
  HeisSrWitness cw = sr_congruence_witness(P, u2, v2);

  Triple xg{1, 0, 0}, yg{0, 1, 0};
  HeisAut phi0 = haut_from_pair(P, hinv(P, xg), hinv(P, yg));
  auto push = [&](const Triple& t) {
    return haut_apply(P, psi, haut_apply(P, phi0, haut_apply(P, psi_inv, t)));
  };
  HeisAut phi = haut_from_pair(P, push(xg), push(yg));
  Triple g2 = haut_apply(P, psi, Triple{cw.a, cw.b, 0});
  RealityWitness w{AutMap::heis_pair(phi), G.identity(), Element(g2)};
  return finish_witness(G, s, std::move(w), std::move(selector),
                        std::move(info));
}

SrResult stream_sr(const GroupHandle& G, const BeauvilleStructure& s,
                   const AutBackend& backend, std::string selector,
                   AutBackendInfo info) {
  auto elements = G.elements();
  Element x1i = G.invert(s.p1.x), y1i = G.invert(s.p1.y);
  Element x2i = G.invert(s.p2.x), y2i = G.invert(s.p2.y);
  auto find_g = [&](const Element& fx, const Element& fy, const Element& xi,
                    const Element& yi) -> std::optional<Element> {
    for (const auto& g : elements)
      if (pair_conj(G, fx, g) == xi && pair_conj(G, fy, g) == yi) return g;
    return std::nullopt;
  };
  auto stream = make_aut_stream(backend, G);
  while (auto phi = stream->next()) {
    auto g1 = find_g(apply_aut(G, *phi, s.p1.x), apply_aut(G, *phi, s.p1.y),
                     x1i, y1i);
    if (!g1) continue;
    auto g2 = find_g(apply_aut(G, *phi, s.p2.x), apply_aut(G, *phi, s.p2.y),
                     x2i, y2i);
    if (!g2) continue;
    RealityWitness w{*phi, *g1, *g2};
    return finish_witness(G, s, std::move(w), std::move(selector),
                          std::move(info));
  }
  return finish_empty(SrStatus::Indeterminate, std::move(selector),
                      std::move(info));
}

SrResult product_sr(const GroupHandle& G, const BeauvilleStructure& s,
                    const AutBackend& backend, std::string selector,
                    AutBackendInfo info) {
  const auto& factors = *G.factors();
  std::vector<SrResult> parts;
  bool exhausted = false, indeterminate = false;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    // Projections of generating pairs generate each factor.
    BeauvilleStructure fs{
        make_generating_pair(factors[f], s.p1.x.tuple()[f], s.p1.y.tuple()[f]),
        make_generating_pair(factors[f], s.p2.x.tuple()[f], s.p2.y.tuple()[f])};
    parts.push_back(sr_check(factors[f], fs, backend.sub[f]));
    if (parts.back().status == SrStatus::ExhaustedNonReal) exhausted = true;
    if (parts.back().status == SrStatus::Indeterminate) indeterminate = true;
  }
  if (exhausted) {
    SrResult r;
    r.status = SrStatus::ExhaustedNonReal;
    r.backend_selector = std::move(selector);
    r.backend = std::move(info);
    return r;
  }
  if (indeterminate)
    return finish_empty(SrStatus::Indeterminate, std::move(selector),
                        std::move(info));
  std::vector<AutMap> maps;
  ProductTuple g1, g2;
  for (auto& p : parts) {
    maps.push_back(p.witness->phi);
    g1.push_back(p.witness->g1);
    g2.push_back(p.witness->g2);
  }
  RealityWitness w{AutMap::tuple(std::move(maps)), Element(std::move(g1)),
                   Element(std::move(g2))};
  return finish_witness(G, s, std::move(w), std::move(selector),
                        std::move(info));
}

bool sigma_disjoint(const ClassId& identity_id, const SigmaSet& a,
                    const SigmaSet& b, ClassId* shared) {
  for (const auto& c : a) {
    if (c == identity_id) continue;
    if (b.count(c)) {
      if (shared) *shared = c;
      return false;
    }
  }
  return true;
}

// Builds the pair record without re-proving generation; callers must have
// already established it.
GeneratingPair pair_unchecked(const GroupHandle& G, const Element& x,
                              const Element& y) {
  GeneratingPair p;
  p.xy = G.multiply(x, y);
  p.ox = G.element_order(x);
  p.oy = G.element_order(y);
  p.oxy = G.element_order(p.xy);
  p.x = x;
  p.y = y;
  return p;
}

}  // namespace

GeneratingPair make_generating_pair(const GroupHandle& G, Element x, Element y) {
  G.validate(x);
  G.validate(y);
  if (!G.is_generating_pair(x, y))
    throw DomainError("the pair (" + G.render_element(x) + ", " +
                      G.render_element(y) + ") does not generate " + G.name());
  return pair_unchecked(G, x, y);
}

SigmaSet sigma_set(const GroupHandle& G, const Element& x, const Element& y) {
  G.validate(x);
  G.validate(y);
  SigmaSet out;
  for (const Element& t : {x, y, G.multiply(x, y)}) {
    Element h = t;
    uint64_t ord = G.element_order(t);
    for (uint64_t m = 1; m <= ord; ++m) {
      out.insert(G.class_id(h));
      h = G.multiply(h, t);
    }
  }
  return out;
}

StructureType structure_type(const BeauvilleStructure& s) {
  StructureType t;
  t.first = {s.p1.ox, s.p1.oy, s.p1.oxy};
  t.second = {s.p2.ox, s.p2.oy, s.p2.oxy};
  return t;
}

std::string type_string(const StructureType& t) {
  auto triple = [](const std::array<uint64_t, 3>& a) {
    return "(" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," +
           std::to_string(a[2]) + ")";
  };
  return "(" + triple(t.first) + "," + triple(t.second) + ")";
}

VerifyResult verify_structure(const GroupHandle& G, const Element& x1,
                              const Element& y1, const Element& x2,
                              const Element& y2) {
  VerifyResult r;
  if (!G.is_generating_pair(x1, y1)) {
    r.failure = "the first pair does not generate the group";
    return r;
  }
  if (!G.is_generating_pair(x2, y2)) {
    r.failure = "the second pair does not generate the group";
    return r;
  }
  BeauvilleStructure s{pair_unchecked(G, x1, y1), pair_unchecked(G, x2, y2)};
  r.type = structure_type(s);
  SigmaSet s1 = sigma_set(G, x1, y1);
  SigmaSet s2 = sigma_set(G, x2, y2);
  ClassId shared;
  if (!sigma_disjoint(G.class_id(G.identity()), s1, s2, &shared)) {
    r.failure = "the sigma sets share a nontrivial conjugacy class";
    r.overlap = shared;
    return r;
  }
  r.ok = true;
  r.structure = std::move(s);
  return r;
}

void check_witness(const GroupHandle& G, const BeauvilleStructure& s,
                   const RealityWitness& w) {
  G.validate(w.g1);
  G.validate(w.g2);
  auto check_one = [&](const Element& g, const Element& t, const char* which) {
    Element lhs = G.multiply(G.multiply(g, apply_aut(G, w.phi, t)), G.invert(g));
    if (lhs != G.invert(t))
      throw Error(std::string("reality witness fails on ") + which + " " +
                  G.render_element(t) + ": got " + G.render_element(lhs));
  };
  check_one(w.g1, s.p1.x, "x1");
  check_one(w.g1, s.p1.y, "y1");
  check_one(w.g2, s.p2.x, "x2");
  check_one(w.g2, s.p2.y, "y2");
}

SrResult sr_check(const GroupHandle& G, const BeauvilleStructure& s,
                  const AutBackend& backend) {
  refuse_a6(G);
  AutBackendInfo info = backend_info(backend, G);
  std::string selector = backend.selector();
  switch (backend.kind) {
    case AutBackend::Kind::Inner:
      return inner_sr(G, s, std::move(selector), std::move(info));
    case AutBackend::Kind::Inversion:
      return inversion_sr(G, s, std::move(selector), std::move(info));
    case AutBackend::Kind::HeisFull:
      return heis_sr(G, s, std::move(selector), std::move(info));
    case AutBackend::Kind::Exhaustive:
      return stream_sr(G, s, backend, std::move(selector), std::move(info));
    case AutBackend::Kind::Declared:
      if (backend.declared_name == "M11")
        return inner_sr(G, s, std::move(selector), std::move(info));
      return declared_sn_sr(G, s, std::move(selector), std::move(info));
    case AutBackend::Kind::Product:
      return product_sr(G, s, backend, std::move(selector), std::move(info));
  }
  throw Error("unreachable backend kind");
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NotTwoGenerated: return "notTwoGenerated";
    case Verdict::NotBeauville: return "notBeauville";
    case Verdict::PurelyStronglyReal: return "purelyStronglyReal";
    case Verdict::PurelyNonStronglyReal: return "purelyNonStronglyReal";
    case Verdict::Mixed: return "mixed";
  }
  throw Error("unreachable verdict");
}

ClassifyReport classify(const GroupHandle& G, const AutBackend& backend,
                        unsigned threads) {
  refuse_a6(G);
  if (const auto* P = G.heis_params(); P && P->p == 3)
    throw CapabilityError(
        "strong-reality purity is not asserted for p = 3 Heisenberg groups; "
        "arithmetic and class queries remain available");
  if (G.order() > G.bounds().classify_order_limit)
    throw CapabilityError("classification is limited to order <= " +
                          std::to_string(G.bounds().classify_order_limit) +
                          "; " + G.name() + " has order " +
                          order_to_string(G.order()));
  ClassifyReport report;
  report.backend_selector = backend.selector();
  report.backend = backend_info(backend, G);

  auto elements = G.elements();
  std::vector<GeneratingPair> pairs;
  std::map<std::pair<Element, Element>, std::size_t> pair_index;
  for (const auto& a : elements)
    for (const auto& b : elements)
      if (G.is_generating_pair(a, b)) {
        pair_index.emplace(std::make_pair(a, b), pairs.size());
        pairs.push_back(pair_unchecked(G, a, b));
      }
  report.generating_pairs = pairs.size();
  if (pairs.empty()) {
    report.verdict = Verdict::NotTwoGenerated;
    return report;
  }

  std::vector<SigmaSet> sigmas(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    sigmas[i] = sigma_set(G, pairs[i].x, pairs[i].y);
  const ClassId identity_id = G.class_id(G.identity());

  std::vector<std::size_t> reps;
  bool unordered_loop = false;
  auto canonical_rep = [&](const Element& x, const Element& y) {
    auto it = pair_index.find(std::make_pair(x, y));
    if (it == pair_index.end())
      throw Error("canonical generating pair missing from the pair table");
    reps.push_back(it->second);
  };
  if (G.kind() == BackendKind::Heisenberg) {
    // Aut acts simply transitively on generating pairs.
    canonical_rep(Element(Triple{1, 0, 0}), Element(Triple{0, 1, 0}));
    report.reduction = "canonical first pair (Aut-transitive)";
  } else if (auto [n1, n2] = G.abelian_moduli();
             G.kind() == BackendKind::Abelian && n1 == n2 && n1 > 1) {
    // Generating pairs are bases, and GL(2, Z/n) is transitive on bases.
    canonical_rep(Element(AbelianVec{1, 0}), Element(AbelianVec{0, 1}));
    report.reduction = "canonical first pair (Aut-transitive)";
  } else if (report.backend.exhaustive) {
    std::vector<AutMap> maps;
    bool streamed = true;
    try {
      auto stream = make_aut_stream(backend, G);
      while (auto m = stream->next()) maps.push_back(std::move(*m));
    } catch (const CapabilityError&) {
      streamed = false;
    }
    if (streamed) {
      std::vector<char> visited(pairs.size(), 0);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (visited[i]) continue;
        reps.push_back(i);
        for (const auto& phi : maps) {
          auto key = std::make_pair(apply_aut(G, phi, pairs[i].x),
                                    apply_aut(G, phi, pairs[i].y));
          visited[pair_index.at(key)] = 1;
        }
      }
      report.reduction =
          "orbit representatives under " + report.backend_selector;
    } else {
      unordered_loop = true;
    }
  } else {
    unordered_loop = true;
  }
  if (unordered_loop) {
    reps.resize(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) reps[i] = i;
    report.reduction = "none (unordered pair enumeration)";
  }
  report.first_pair_reps = reps.size();

  if (threads == 0) threads = 1;
  std::size_t unresolved = 0;
  for (std::size_t r : reps) {
    std::size_t begin = unordered_loop ? r + 1 : 0;
    if (begin >= pairs.size() && unordered_loop) continue;
    std::vector<std::optional<ClassifiedStructure>> slots(pairs.size());
    auto work = [&](std::size_t worker) {
      for (std::size_t j = begin + worker; j < pairs.size(); j += threads) {
        if (j == r) continue;
        if (!sigma_disjoint(identity_id, sigmas[r], sigmas[j], nullptr)) continue;
        ClassifiedStructure cs{{pairs[r], pairs[j]}, {}};
        cs.sr = sr_check(G, cs.structure, backend);
        slots[j] = std::move(cs);
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& t : pool) t.join();
    }
    report.second_pairs_tried += pairs.size() - begin - (unordered_loop ? 0 : 1);
    for (std::size_t j = begin; j < pairs.size(); ++j) {
      if (!slots[j]) continue;
      switch (slots[j]->sr.status) {
        case SrStatus::Witnessed: ++report.witnessed; break;
        case SrStatus::ExhaustedNonReal: ++report.certified_non_real; break;
        case SrStatus::Indeterminate: ++unresolved; break;
      }
      report.structures.push_back(std::move(*slots[j]));
    }
  }

  if (unresolved > 0)
    throw CapabilityError("backend " + report.backend_selector +
                          " left " + std::to_string(unresolved) +
                          " structure(s) unresolved; use an exhaustive backend "
                          "for a purity verdict");
  if (report.structures.empty()) {
    report.verdict = Verdict::NotBeauville;
  } else if (report.certified_non_real == 0) {
    report.verdict = Verdict::PurelyStronglyReal;
  } else if (report.witnessed == 0) {
    report.verdict = Verdict::PurelyNonStronglyReal;
  } else {
    report.verdict = Verdict::Mixed;
  }
  return report;
}

std::vector<BeauvilleStructure> search_structures(const GroupHandle& G,
                                                  const SearchOptions& opt) {
  refuse_a6(G);
  std::vector<BeauvilleStructure> found;
  std::set<std::array<Element, 4>> seen;
  uint64_t examined = 0;
  auto consider = [&](const Element& x1, const Element& y1, const Element& x2,
                      const Element& y2) {
    ++examined;
    auto v = verify_structure(G, x1, y1, x2, y2);
    if (!v.ok) return;
    std::array<Element, 4> key{x1, y1, x2, y2};
    std::array<Element, 4> swapped{x2, y2, x1, y1};
    if (swapped < key) key = swapped;
    if (seen.insert(key).second) found.push_back(std::move(*v.structure));
  };

  for (const auto& h : opt.hints) {
    if (examined >= opt.budget || found.size() >= opt.max_results) break;
    consider(h[0], h[1], h[2], h[3]);
  }
  if (opt.systematic) {
    auto elements = G.elements();
    std::vector<GeneratingPair> pairs;
    for (const auto& a : elements)
      for (const auto& b : elements)
        if (G.is_generating_pair(a, b)) pairs.push_back(pair_unchecked(G, a, b));
    std::vector<SigmaSet> sigmas(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
      sigmas[i] = sigma_set(G, pairs[i].x, pairs[i].y);
    const ClassId identity_id = G.class_id(G.identity());
    for (std::size_t i = 0;
         i < pairs.size() && examined < opt.budget && found.size() < opt.max_results;
         ++i)
      for (std::size_t j = i + 1;
           j < pairs.size() && examined < opt.budget && found.size() < opt.max_results;
           ++j) {
        ++examined;
        if (!sigma_disjoint(identity_id, sigmas[i], sigmas[j], nullptr)) continue;
        std::array<Element, 4> key{pairs[i].x, pairs[i].y, pairs[j].x, pairs[j].y};
        std::array<Element, 4> swapped{key[2], key[3], key[0], key[1]};
        if (swapped < key) key = swapped;
        if (seen.insert(key).second)
          found.push_back(BeauvilleStructure{pairs[i], pairs[j]});
      }
    return found;
  }
  std::mt19937_64 rng(opt.seed);
  while (examined < opt.budget && found.size() < opt.max_results) {
    Element x1 = G.random_element(rng);
    Element y1 = G.random_element(rng);
    Element x2 = G.random_element(rng);
    Element y2 = G.random_element(rng);
    consider(x1, y1, x2, y2);
  }
  return found;
}

ClassInversionReport class_inversion_report(const GroupHandle& G,
                                            const AutBackend& backend) {
  refuse_a6(G);
  ClassInversionReport report;
  report.backend_selector = backend.selector();
  report.backend = backend_info(backend, G);

  if (backend.kind == AutBackend::Kind::Product) {
    // Componentwise: a product class inverts iff every factor class does.
    const auto& factors = *G.factors();
    std::vector<ClassInversionReport> parts;
    for (std::size_t f = 0; f < factors.size(); ++f)
      parts.push_back(class_inversion_report(factors[f], backend.sub[f]));
    std::vector<std::size_t> idx(factors.size(), 0);
    for (;;) {
      ClassInversionRow row;
      ProductTuple rep;
      row.invertible = true;
      row.size = 1;
      for (std::size_t f = 0; f < factors.size(); ++f) {
        const auto& r = parts[f].rows[idx[f]];
        rep.push_back(r.representative);
        row.invertible = row.invertible && r.invertible;
        row.size *= r.size;
      }
      row.representative = Element(std::move(rep));
      row.id = G.class_id(row.representative);
      row.order = G.element_order(row.representative);
      report.rows.push_back(std::move(row));
      std::size_t f = factors.size();
      while (f-- > 0) {
        if (++idx[f] < parts[f].rows.size()) break;
        idx[f] = 0;
        if (f == 0) {
          std::sort(report.rows.begin(), report.rows.end(),
                    [](const auto& a, const auto& b) { return a.id < b.id; });
          return report;
        }
      }
    }
  }

  auto elements = G.elements();
  std::map<ClassId, ClassInversionRow> rows;
  for (const auto& e : elements) {
    ClassId id = G.class_id(e);
    auto [it, fresh] = rows.try_emplace(id);
    if (fresh) {
      it->second.id = id;
      it->second.representative = e;  // elements come sorted, so this is min
      it->second.order = G.element_order(e);
    }
    it->second.size += 1;
  }

  auto real_class = [&](const ClassInversionRow& r) {
    return G.class_id(G.invert(r.representative)) == r.id;
  };
  switch (backend.kind) {
    case AutBackend::Kind::Inversion:
      for (auto& [id, r] : rows) r.invertible = true;
      break;
    case AutBackend::Kind::Inner:
      for (auto& [id, r] : rows) r.invertible = real_class(r);
      break;
    case AutBackend::Kind::Declared:
      if (backend.declared_name == "M11") {
        for (auto& [id, r] : rows) r.invertible = real_class(r);
      } else {
        // S(n) conjugation reaches the inverse's equal cycle type always.
        for (auto& [id, r] : rows) r.invertible = true;
      }
      break;
    case AutBackend::Kind::HeisFull:
    case AutBackend::Kind::Exhaustive: {
      std::vector<ClassInversionRow*> unresolved;
      for (auto& [id, r] : rows) unresolved.push_back(&r);
      auto stream = make_aut_stream(backend, G);
      while (!unresolved.empty()) {
        auto phi = stream->next();
        if (!phi) break;
        std::vector<ClassInversionRow*> still;
        for (auto* r : unresolved) {
          if (G.class_id(apply_aut(G, *phi, r->representative)) ==
              G.class_id(G.invert(r->representative)))
            r->invertible = true;
          else
            still.push_back(r);
        }
        unresolved.swap(still);
      }
      break;
    }
    case AutBackend::Kind::Product:
      throw Error("unreachable: product handled above");
  }
  for (auto& [id, r] : rows) report.rows.push_back(std::move(r));
  return report;
}

}  // namespace bvl
