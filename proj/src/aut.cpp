#include "bvl/aut.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bvl {

namespace {

std::string kind_name(BackendKind k) {
  switch (k) {
    case BackendKind::Permutation: return "permutation";
    case BackendKind::Abelian: return "abelian";
    case BackendKind::Heisenberg: return "Heisenberg";
    case BackendKind::Product: return "product";
  }
  return "?";
}

[[noreturn]] void wrong_shape(const char* selector, const GroupHandle& G) {
  throw CapabilityError(std::string(selector) + " backend does not apply to the " +
                        kind_name(G.kind()) + " group " + G.name());
}

void check_a6(unsigned degree) {
  if (degree == 6)
    throw CapabilityError(
        "A(6) is excluded: its exceptional outer automorphism is not realized "
        "by symmetric-group conjugation");
}

// Conjugation by distinct center cosets gives distinct inner maps.
std::vector<Element> center_of(const GroupHandle& G,
                               const std::vector<Element>& elements) {
  std::vector<Element> center;
  auto gens = G.stored_generators();
  for (const auto& e : elements) {
    bool central = true;
    for (const auto& g : gens)
      if (G.multiply(e, g) != G.multiply(g, e)) {
        central = false;
        break;
      }
    if (central) center.push_back(e);
  }
  return center;
}

class InnerStream final : public AutStream {
 public:
  InnerStream(const GroupHandle& G, bool ambient_symmetric)
      : G_(G) {
    if (ambient_symmetric) {
      const auto* pg = G.perm_group();
      unsigned n = pg->degree();
      std::vector<Permutation> sgens;
      if (n >= 2)
        sgens.push_back(Permutation::parse_cycles(n, "(1,2)"));
      if (n >= 3) {
        std::vector<unsigned> img(n);
        for (unsigned i = 0; i < n; ++i) img[i] = (i + 1) % n;
        sgens.push_back(Permutation::from_images(img));
      }
      auto perms = closure_elements(n, sgens, G.bounds().enumeration_limit);
      for (const auto& p : perms) reps_.emplace_back(p);
      // C_{S(n)}(A(n)) is trivial for n >= 4, so no two of these coincide.
      ambient_ = true;
      return;
    }
    auto elements = G.elements();
    auto center = center_of(G, elements);
    for (const auto& e : elements) {
      bool minimal = true;
      for (const auto& z : center)
        if (G.multiply(z, e) < e) {
          minimal = false;
          break;
        }
      if (minimal) reps_.push_back(e);
    }
  }

  std::optional<AutMap> next() override {
    if (pos_ >= reps_.size()) return std::nullopt;
    return AutMap::conjugation(reps_[pos_++], ambient_);
  }

 private:
  GroupHandle G_;
  std::vector<Element> reps_;
  bool ambient_ = false;
  std::size_t pos_ = 0;
};

class SingleStream final : public AutStream {
 public:
  explicit SingleStream(AutMap m) : map_(std::move(m)) {}
  std::optional<AutMap> next() override {
    if (done_) return std::nullopt;
    done_ = true;
    return map_;
  }

 private:
  AutMap map_;
  bool done_ = false;
};

// Lazily walks ordered pairs of triples; valid generating pairs are exactly
// the automorphisms, so no dedup is needed.
class HeisStream final : public AutStream {
 public:
  explicit HeisStream(const HeisParams& params) : params_(params) {
    total_ = static_cast<uint64_t>(params.order());
  }

  std::optional<AutMap> next() override {
    while (idx_ < total_ * total_) {
      Triple u = decode(idx_ / total_);
      Triple v = decode(idx_ % total_);
      ++idx_;
      if (hgenerates(params_, u, v))
        return AutMap::heis_pair(haut_from_pair(params_, u, v));
    }
    return std::nullopt;
  }

 private:
  Triple decode(uint64_t m) const {
    uint64_t k = m % params_.pr;
    m /= params_.pr;
    return Triple{m / params_.pn, m % params_.pn, k};
  }

  HeisParams params_;
  uint64_t total_ = 0;
  uint64_t idx_ = 0;
};

// Generator-image search. Candidate images share the generator's order and
// class size; a candidate tuple is extended along a spanning tree of the
// Cayley graph, every remaining edge is checked, and the image set must
// exhaust the group. That verifies the full multiplication table: products
// against generators determine all products.
class ExhaustiveStream final : public AutStream {
 public:
  explicit ExhaustiveStream(const GroupHandle& G) : G_(G) {
    elements_ = G.elements();
    std::map<Element, std::size_t> index;
    for (std::size_t i = 0; i < elements_.size(); ++i) index[elements_[i]] = i;

    gens_ = G.stored_generators();
    right_.assign(gens_.size(), std::vector<std::size_t>(elements_.size()));
    for (std::size_t g = 0; g < gens_.size(); ++g)
      for (std::size_t i = 0; i < elements_.size(); ++i)
        right_[g][i] = index.at(G.multiply(elements_[i], gens_[g]));

    std::map<std::string, std::size_t> class_size;
    std::vector<std::string> labels(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      labels[i] = G.class_id(elements_[i]).label;
      ++class_size[labels[i]];
    }
    std::vector<std::pair<uint64_t, std::size_t>> fingerprint(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i)
      fingerprint[i] = {G.element_order(elements_[i]), class_size[labels[i]]};

    candidates_.resize(gens_.size());
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      auto want = fingerprint[index.at(gens_[g])];
      for (std::size_t i = 0; i < elements_.size(); ++i)
        if (fingerprint[i] == want) candidates_[g].push_back(i);
    }
    odometer_.assign(gens_.size(), 0);
    identity_index_ = index.at(G.identity());
  }

  std::optional<AutMap> next() override {
    while (!done_) {
      auto map = try_candidate();
      advance();
      if (map) return map;
    }
    return std::nullopt;
  }

 private:
  std::optional<AutMap> try_candidate() {
    const std::size_t n = elements_.size();
    std::vector<std::optional<Element>> img(n);
    img[identity_index_] = G_.identity();
    std::vector<std::size_t> queue{identity_index_};
    std::size_t assigned = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t i = queue[qi];
      for (std::size_t g = 0; g < gens_.size(); ++g) {
        std::size_t j = right_[g][i];
        Element v = G_.multiply(*img[i], elements_[candidates_[g][odometer_[g]]]);
        if (!img[j]) {
          img[j] = std::move(v);
          queue.push_back(j);
          ++assigned;
        } else if (*img[j] != v) {
          return std::nullopt;
        }
      }
    }
    if (assigned != n) return std::nullopt;  // generators fail to generate
    std::set<Element> seen;
    auto table = std::make_shared<std::map<Element, Element>>();
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen.insert(*img[i]).second) return std::nullopt;
      table->emplace(elements_[i], *img[i]);
    }
    return AutMap::lookup_table(std::move(table));
  }

  void advance() {
    for (std::size_t g = gens_.size(); g-- > 0;) {
      if (++odometer_[g] < candidates_[g].size()) return;
      odometer_[g] = 0;
    }
    done_ = true;
  }

  GroupHandle G_;
  std::vector<Element> elements_;
  std::vector<Element> gens_;
  std::vector<std::vector<std::size_t>> right_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::size_t> odometer_;
  std::size_t identity_index_ = 0;
  bool done_ = false;
};

class ProductStream final : public AutStream {
 public:
  ProductStream(const AutBackend& b, const GroupHandle& G) : backend_(b), G_(G) {
    const auto& factors = *G.factors();
    for (std::size_t i = 0; i < factors.size(); ++i)
      streams_.push_back(make_aut_stream(backend_.sub[i], factors[i]));
  }

  std::optional<AutMap> next() override {
    if (done_) return std::nullopt;
    if (!started_) {
      started_ = true;
      current_.resize(streams_.size());
      for (std::size_t i = 0; i < streams_.size(); ++i) {
        auto m = streams_[i]->next();
        if (!m) {
          done_ = true;
          return std::nullopt;
        }
        current_[i] = *m;
      }
      return AutMap::tuple(current_);
    }
    for (std::size_t i = streams_.size(); i-- > 0;) {
      if (auto m = streams_[i]->next()) {
        current_[i] = *m;
        return AutMap::tuple(current_);
      }
      streams_[i] = make_aut_stream(backend_.sub[i], (*G_.factors())[i]);
      current_[i] = *streams_[i]->next();
    }
    done_ = true;
    return std::nullopt;
  }

 private:
  AutBackend backend_;
  GroupHandle G_;
  std::vector<std::unique_ptr<AutStream>> streams_;
  std::vector<AutMap> current_;
  bool started_ = false;
  bool done_ = false;
};

bool parse_sn_name(const std::string& name, unsigned& degree) {
  if (name.size() < 4 || name.front() != 'S' || name[1] != '(' ||
      name.back() != ')')
    return false;
  unsigned d = 0;
  for (std::size_t i = 2; i + 1 < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    d = d * 10 + static_cast<unsigned>(name[i] - '0');
  }
  degree = d;
  return d > 0;
}

void check_declared(const std::string& name, const GroupHandle& G) {
  unsigned degree = 0;
  if (name == "M11") {
    if (!declared_outer_trivial(G))
      throw CapabilityError("declared:M11 applies only to the Mathieu group M11");
    return;
  }
  if (parse_sn_name(name, degree)) {
    check_a6(degree);
    if (G.kind() != BackendKind::Permutation ||
        G.perm_ambient() != Ambient::Alternating ||
        G.perm_group()->degree() != degree || degree < 4)
      throw CapabilityError("declared:" + name +
                            " applies only to the alternating group A(" +
                            std::to_string(degree) + ") with " +
                            std::to_string(degree) + " points, degree >= 4");
    return;
  }
  throw CapabilityError("no declared automorphism facts registered under '" +
                        name + "'");
}

std::string product_basis(const GroupHandle& G) {
  const auto& factors = *G.factors();
  bool coprime = true;
  for (std::size_t i = 0; i < factors.size() && coprime; ++i)
    for (std::size_t j = i + 1; j < factors.size() && coprime; ++j) {
      GroupOrder a = factors[i].order(), b = factors[j].order();
      while (b) {
        GroupOrder t = a % b;
        a = b;
        b = t;
      }
      if (a != 1) coprime = false;
    }
  if (coprime) return "factor orders are pairwise coprime";
  if (declared_indecomposable_distinct(factors))
    return "declared: factors are directly indecomposable and pairwise "
           "non-isomorphic";
  throw CapabilityError(
      "the product backend needs pairwise coprime factor orders or declared "
      "directly indecomposable, pairwise non-isomorphic factors");
}

}  // namespace

AutMap AutMap::identity() { return {}; }

AutMap AutMap::conjugation(Element by, bool ambient) {
  AutMap m;
  m.kind = Kind::Conjugation;
  m.conj = std::move(by);
  m.ambient = ambient;
  return m;
}

AutMap AutMap::inversion() {
  AutMap m;
  m.kind = Kind::Inversion;
  return m;
}

AutMap AutMap::heis_pair(const HeisAut& h) {
  AutMap m;
  m.kind = Kind::HeisPair;
  m.heis = h;
  return m;
}

AutMap AutMap::lookup_table(std::shared_ptr<const std::map<Element, Element>> t) {
  AutMap m;
  m.kind = Kind::Table;
  m.table = std::move(t);
  return m;
}

AutMap AutMap::tuple(std::vector<AutMap> parts) {
  AutMap m;
  m.kind = Kind::Tuple;
  m.components = std::move(parts);
  return m;
}

Element apply_aut(const GroupHandle& G, const AutMap& phi, const Element& g) {
  switch (phi.kind) {
    case AutMap::Kind::Identity:
      return g;
    case AutMap::Kind::Conjugation:
      if (phi.ambient) return Element(conjugate(g.perm(), phi.conj.perm()));
      return G.conjugate_by(g, phi.conj);
    case AutMap::Kind::Inversion:
      if (G.kind() != BackendKind::Abelian)
        throw DomainError("inversion is an automorphism of abelian groups only");
      return G.invert(g);
    case AutMap::Kind::HeisPair:
      return Element(haut_apply(*G.heis_params(), *phi.heis, g.heis()));
    case AutMap::Kind::Table: {
      auto it = phi.table->find(g);
      if (it == phi.table->end())
        throw DomainError("element is outside the automorphism's lookup table");
      return it->second;
    }
    case AutMap::Kind::Tuple: {
      const auto& factors = *G.factors();
      if (phi.components.size() != factors.size())
        throw DomainError("componentwise map does not match the product shape");
      ProductTuple out;
      for (std::size_t i = 0; i < factors.size(); ++i)
        out.push_back(apply_aut(factors[i], phi.components[i], g.tuple()[i]));
      return Element(std::move(out));
    }
  }
  throw Error("unreachable automorphism kind");
}

std::string describe_aut(const GroupHandle& G, const AutMap& phi) {
  switch (phi.kind) {
    case AutMap::Kind::Identity:
      return "identity";
    case AutMap::Kind::Conjugation:
      if (phi.ambient)
        return "conjugation by ambient " + phi.conj.perm().str();
      return "conjugation by " + G.render_element(phi.conj);
    case AutMap::Kind::Inversion:
      return "inversion";
    case AutMap::Kind::HeisPair:
      return "x -> " + hstr(phi.heis->u) + ", y -> " + hstr(phi.heis->v);
    case AutMap::Kind::Table: {
      std::string s;
      for (const auto& g : G.stored_generators()) {
        if (!s.empty()) s += ", ";
        s += G.render_element(g) + " -> " +
             G.render_element(apply_aut(G, phi, g));
      }
      return s;
    }
    case AutMap::Kind::Tuple: {
      const auto& factors = *G.factors();
      std::string s = "(";
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += " | ";
        s += describe_aut(factors[i], phi.components[i]);
      }
      return s + ")";
    }
  }
  throw Error("unreachable automorphism kind");
}

AutBackend AutBackend::parse(const std::string& selector) {
  AutBackend b;
  if (selector == "inner") {
    b.kind = Kind::Inner;
  } else if (selector == "inversion") {
    b.kind = Kind::Inversion;
  } else if (selector == "heis-full") {
    b.kind = Kind::HeisFull;
  } else if (selector == "exhaustive") {
    b.kind = Kind::Exhaustive;
  } else if (selector.rfind("declared:", 0) == 0) {
    b.kind = Kind::Declared;
    b.declared_name = selector.substr(9);
    if (b.declared_name.empty())
      throw ParseError("declared backend needs a registry name", 9);
  } else if (selector.rfind("product(", 0) == 0 && selector.back() == ')') {
    b.kind = Kind::Product;
    std::string inner = selector.substr(8, selector.size() - 9);
    std::size_t depth = 0, start = 0;
    for (std::size_t i = 0; i <= inner.size(); ++i) {
      if (i == inner.size() || (inner[i] == ',' && depth == 0)) {
        if (i == start) throw ParseError("empty factor selector", 8 + start);
        b.sub.push_back(parse(inner.substr(start, i - start)));
        start = i + 1;
      } else if (inner[i] == '(') {
        ++depth;
      } else if (inner[i] == ')') {
        --depth;
      }
    }
    if (b.sub.size() < 2)
      throw ParseError("product backend needs at least two factor selectors", 0);
  } else {
    throw ParseError("unknown automorphism backend '" + selector + "'", 0);
  }
  return b;
}

std::string AutBackend::selector() const {
  switch (kind) {
    case Kind::Inner: return "inner";
    case Kind::Inversion: return "inversion";
    case Kind::HeisFull: return "heis-full";
    case Kind::Exhaustive: return "exhaustive";
    case Kind::Declared: return "declared:" + declared_name;
    case Kind::Product: {
      std::string s = "product(";
      for (std::size_t i = 0; i < sub.size(); ++i) {
        if (i) s += ',';
        s += sub[i].selector();
      }
      return s + ")";
    }
  }
  throw Error("unreachable backend kind");
}

AutBackend AutBackend::automatic(const GroupHandle& G) {
  AutBackend b;
  switch (G.kind()) {
    case BackendKind::Heisenberg:
      b.kind = Kind::HeisFull;
      return b;
    case BackendKind::Abelian:
      b.kind = Kind::Inversion;
      return b;
    case BackendKind::Permutation: {
      unsigned n = G.perm_group()->degree();
      if (G.perm_ambient() == Ambient::Alternating) {
        check_a6(n);
        if (n >= 4) {
          b.kind = Kind::Declared;
          b.declared_name = "S(" + std::to_string(n) + ")";
          return b;
        }
      }
      if (declared_outer_trivial(G)) {
        b.kind = Kind::Declared;
        b.declared_name = "M11";
        return b;
      }
      b.kind = G.order() <= G.bounds().exhaustive_aut_limit ? Kind::Exhaustive
                                                            : Kind::Inner;
      return b;
    }
    case BackendKind::Product: {
      b.kind = Kind::Product;
      for (const auto& f : *G.factors()) b.sub.push_back(automatic(f));
      return b;
    }
  }
  throw Error("unreachable backend tag");
}

AutBackendInfo backend_info(const AutBackend& b, const GroupHandle& G) {
  AutBackendInfo info;
  switch (b.kind) {
    case AutBackend::Kind::Inner:
      info.exhaustive = false;
      return info;
    case AutBackend::Kind::Inversion:
      if (G.kind() != BackendKind::Abelian) wrong_shape("inversion", G);
      info.exhaustive = false;
      return info;
    case AutBackend::Kind::HeisFull:
      if (G.kind() != BackendKind::Heisenberg) wrong_shape("heis-full", G);
      info.exhaustive = true;
      return info;
    case AutBackend::Kind::Exhaustive:
      if (G.order() > G.bounds().exhaustive_aut_limit)
        throw CapabilityError(
            "exhaustive automorphism search is limited to order <= " +
            std::to_string(G.bounds().exhaustive_aut_limit) + "; " + G.name() +
            " has order " + order_to_string(G.order()));
      info.exhaustive = true;
      return info;
    case AutBackend::Kind::Declared:
      check_declared(b.declared_name, G);
      info.exhaustive = true;
      if (b.declared_name == "M11")
        info.assumptions.push_back("Out(M11) is trivial");
      else
        info.assumptions.push_back("Aut(A(n)) is realized by S(n) conjugation "
                                   "for n >= 4, n != 6");
      return info;
    case AutBackend::Kind::Product: {
      if (G.kind() != BackendKind::Product) wrong_shape("product", G);
      const auto& factors = *G.factors();
      if (b.sub.size() != factors.size())
        throw CapabilityError("product backend has " +
                              std::to_string(b.sub.size()) +
                              " factor selectors for " +
                              std::to_string(factors.size()) + " factors");
      info.assumptions.push_back(product_basis(G));
      info.exhaustive = true;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        auto si = backend_info(b.sub[i], factors[i]);
        info.exhaustive = info.exhaustive && si.exhaustive;
        for (auto& a : si.assumptions) info.assumptions.push_back(std::move(a));
      }
      return info;
    }
  }
  throw Error("unreachable backend kind");
}

std::unique_ptr<AutStream> make_aut_stream(const AutBackend& b,
                                           const GroupHandle& G) {
  backend_info(b, G);  // applicability gate
  switch (b.kind) {
    case AutBackend::Kind::Inner:
      return std::make_unique<InnerStream>(G, false);
    case AutBackend::Kind::Inversion:
      return std::make_unique<SingleStream>(AutMap::inversion());
    case AutBackend::Kind::HeisFull:
      return std::make_unique<HeisStream>(*G.heis_params());
    case AutBackend::Kind::Exhaustive:
      return std::make_unique<ExhaustiveStream>(G);
    case AutBackend::Kind::Declared:
      if (b.declared_name == "M11")
        return std::make_unique<InnerStream>(G, false);
      return std::make_unique<InnerStream>(G, true);
    case AutBackend::Kind::Product:
      return std::make_unique<ProductStream>(b, G);
  }
  throw Error("unreachable backend kind");
}

bool declared_outer_trivial(const GroupHandle& G) {
  return G.kind() == BackendKind::Permutation && G.name() == "M11" &&
         G.order() == 7920;
}

bool declared_symmetric_completion(const GroupHandle& G) {
  if (G.kind() != BackendKind::Permutation ||
      G.perm_ambient() != Ambient::Alternating)
    return false;
  unsigned n = G.perm_group()->degree();
  return n >= 4 && n != 6;
}

bool declared_indecomposable_distinct(const std::vector<GroupHandle>& factors) {
  for (const auto& f : factors) {
    switch (f.kind()) {
      case BackendKind::Heisenberg:
        break;  // cyclic commutator subgroup forces indecomposability
      case BackendKind::Permutation: {
        bool simple_atom =
            declared_outer_trivial(f) ||
            (f.perm_ambient() == Ambient::Alternating &&
             f.perm_group()->degree() >= 5) ||
            (f.name() == "L2(8)" && f.order() == 504);
        if (!simple_atom) return false;
        break;
      }
      case BackendKind::Abelian: {
        auto [n1, n2] = f.abelian_moduli();
        uint64_t n = n1 > 1 ? n1 : n2;
        if (n1 > 1 && n2 > 1) return false;
        if (n < 2) return false;
        uint64_t p = 0;
        for (uint64_t d = 2; d * d <= n; ++d)
          if (n % d == 0) {
            p = d;
            break;
          }
        if (p == 0) p = n;
        while (n % p == 0) n /= p;
        if (n != 1) return false;  // prime-power cyclic only
        break;
      }
      case BackendKind::Product:
        return false;
    }
  }
  // Distinct orders certify pairwise non-isomorphic.
  std::set<GroupOrder> orders;
  for (const auto& f : factors)
    if (!orders.insert(f.order()).second) return false;
  return true;
}

}  // namespace bvl
