#include "bvl/group_handle.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace bvl {

namespace {

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

bool abelian_generates(uint64_t n1, uint64_t n2, const AbelianVec& x,
                       const AbelianVec& y) {
  std::set<uint64_t> primes;
  for (uint64_t p : prime_factors(n1)) primes.insert(p);
  for (uint64_t p : prime_factors(n2)) primes.insert(p);
  for (uint64_t p : primes) {
    bool d1 = n1 % p == 0, d2 = n2 % p == 0;
    if (d1 && d2) {
      uint64_t det =
          ((x.a % p) * (y.b % p) % p + p - (x.b % p) * (y.a % p) % p) % p;
      if (det == 0) return false;
    } else if (d1) {
      if (x.a % p == 0 && y.a % p == 0) return false;
    } else {
      if (x.b % p == 0 && y.b % p == 0) return false;
    }
  }
  return true;
}

std::string type_string(const std::vector<unsigned>& type) {
  std::string s;
  for (unsigned l : type) {
    if (!s.empty()) s += ',';
    s += std::to_string(l);
  }
  return s;
}

int64_t parse_int(const std::string& text, std::size_t& i) {
  std::size_t start = i;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
  int64_t v = 0;
  std::size_t digits = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
    v = v * 10 + (text[i++] - '0');
  if (i == digits) throw ParseError("expected an integer", start);
  return neg ? -v : v;
}

uint64_t reduce_mod(int64_t v, uint64_t m) {
  int64_t r = v % static_cast<int64_t>(m);
  if (r < 0) r += static_cast<int64_t>(m);
  return static_cast<uint64_t>(r);
}

void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

void expect_char(const std::string& s, std::size_t& i, char c) {
  skip_ws(s, i);
  if (i >= s.size() || s[i] != c)
    throw ParseError(std::string("expected '") + c + "'", i);
  ++i;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Accept both the angle-bracket glyphs and plain ASCII for tuples.
std::string ascii_brackets(std::string s) {
  auto replace_all = [&](const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
      s.replace(pos, from.size(), to);
      pos += to.size();
    }
  };
  replace_all("⟨", "<");
  replace_all("⟩", ">");
  return s;
}

}  // namespace

struct GroupHandle::Impl {
  BackendKind kind_tag = BackendKind::Permutation;
  std::string name;
  Bounds bounds;
  GroupOrder order = 1;
  // permutation
  std::shared_ptr<const PermGroup> group;
  Ambient ambient = Ambient::Generic;
  mutable std::mutex cache_mutex;
  mutable std::map<Permutation, std::string> class_cache;
  // abelian
  uint64_t n1 = 1, n2 = 1;
  // heisenberg
  std::optional<HeisParams> heis;
  // product
  std::vector<GroupHandle> factors;
  bool all_perm_factors = false;
  unsigned combined_degree = 0;
};

GroupHandle GroupHandle::permutation(std::string name, unsigned degree,
                                     std::vector<Permutation> generators,
                                     Ambient ambient, const Bounds& bounds) {
  if (ambient == Ambient::Alternating)
    for (const auto& g : generators)
      if (g.parity() != 0)
        throw DomainError("odd permutation " + g.str() +
                          " is not in the alternating group");
  auto impl = std::make_shared<Impl>();
  impl->kind_tag = BackendKind::Permutation;
  impl->name = std::move(name);
  impl->bounds = bounds;
  impl->group = std::make_shared<PermGroup>(degree, std::move(generators));
  impl->ambient = ambient;
  impl->order = impl->group->order();
  return GroupHandle(std::move(impl));
}

GroupHandle GroupHandle::abelian(std::string name, uint64_t n1, uint64_t n2,
                                 const Bounds& bounds) {
  if (n1 == 0 || n2 == 0) throw DomainError("abelian moduli must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind_tag = BackendKind::Abelian;
  impl->name = std::move(name);
  impl->bounds = bounds;
  impl->n1 = n1;
  impl->n2 = n2;
  impl->order = static_cast<GroupOrder>(n1) * n2;
  return GroupHandle(std::move(impl));
}

GroupHandle GroupHandle::heisenberg(std::string name, const HeisParams& params,
                                    const Bounds& bounds) {
  auto impl = std::make_shared<Impl>();
  impl->kind_tag = BackendKind::Heisenberg;
  impl->name = std::move(name);
  impl->bounds = bounds;
  impl->heis = params;
  impl->order = params.order();
  return GroupHandle(std::move(impl));
}

GroupHandle GroupHandle::product(std::string name, std::vector<GroupHandle> factors,
                                 const Bounds& bounds) {
  if (factors.size() < 2) throw DomainError("a product needs at least two factors");
  auto impl = std::make_shared<Impl>();
  impl->kind_tag = BackendKind::Product;
  impl->name = std::move(name);
  impl->bounds = bounds;
  impl->order = 1;
  impl->all_perm_factors = true;
  for (const auto& f : factors) {
    impl->order *= f.order();
    if (f.kind() == BackendKind::Permutation)
      impl->combined_degree += f.perm_group()->degree();
    else
      impl->all_perm_factors = false;
  }
  impl->factors = std::move(factors);
  return GroupHandle(std::move(impl));
}

BackendKind GroupHandle::kind() const { return impl_->kind_tag; }
const std::string& GroupHandle::name() const { return impl_->name; }
const Bounds& GroupHandle::bounds() const { return impl_->bounds; }
GroupOrder GroupHandle::order() const { return impl_->order; }

const PermGroup* GroupHandle::perm_group() const {
  return impl_->kind_tag == BackendKind::Permutation ? impl_->group.get() : nullptr;
}
Ambient GroupHandle::perm_ambient() const { return impl_->ambient; }
const HeisParams* GroupHandle::heis_params() const {
  return impl_->heis ? &*impl_->heis : nullptr;
}
std::pair<uint64_t, uint64_t> GroupHandle::abelian_moduli() const {
  return {impl_->n1, impl_->n2};
}
const std::vector<GroupHandle>* GroupHandle::factors() const {
  return impl_->kind_tag == BackendKind::Product ? &impl_->factors : nullptr;
}

Element GroupHandle::identity() const {
  switch (impl_->kind_tag) {
    case BackendKind::Permutation:
      return Element(Permutation(impl_->group->degree()));
    case BackendKind::Abelian:
      return Element(AbelianVec{0, 0});
    case BackendKind::Heisenberg:
      return Element(Triple{0, 0, 0});
    case BackendKind::Product: {
      ProductTuple t;
      for (const auto& f : impl_->factors) t.push_back(f.identity());
      return Element(std::move(t));
    }
  }
  throw Error("unreachable backend tag");
}

std::vector<Element> GroupHandle::stored_generators() const {
  switch (impl_->kind_tag) {
    case BackendKind::Permutation: {
      std::vector<Element> out;
      for (const auto& g : impl_->group->generators()) out.emplace_back(g);
      return out;
    }
    case BackendKind::Abelian:
      return {Element(AbelianVec{impl_->n1 > 1 ? 1u : 0u, 0}),
              Element(AbelianVec{0, impl_->n2 > 1 ? 1u : 0u})};
    case BackendKind::Heisenberg:
      return {Element(Triple{1, 0, 0}), Element(Triple{0, 1, 0})};
    case BackendKind::Product: {
      std::vector<Element> out;
      for (std::size_t f = 0; f < impl_->factors.size(); ++f)
        for (const auto& g : impl_->factors[f].stored_generators()) {
          ProductTuple t;
          for (std::size_t j = 0; j < impl_->factors.size(); ++j)
            t.push_back(j == f ? g : impl_->factors[j].identity());
          out.emplace_back(std::move(t));
        }
      return out;
    }
  }
  throw Error("unreachable backend tag");
}

void GroupHandle::validate(const Element& a) const {
  switch (impl_->kind_tag) {
    case BackendKind::Permutation: {
      const auto& p = a.perm();
      if (p.degree() != impl_->group->degree())
        throw DomainError("element degree " + std::to_string(p.degree()) +
                          " does not match group degree " +
                          std::to_string(impl_->group->degree()));
      if (impl_->ambient == Ambient::Symmetric) return;
      if (impl_->ambient == Ambient::Alternating) {
        if (p.parity() != 0)
          throw DomainError("odd permutation " + p.str() +
                            " is not in the alternating group");
        return;
      }
      if (!impl_->group->contains(p))
        throw DomainError("permutation " + p.str() + " is not a member of " +
                          impl_->name);
      return;
    }
    case BackendKind::Abelian: {
      const auto& v = a.abelian();
      if (v.a >= impl_->n1 || v.b >= impl_->n2)
        throw DomainError("abelian residues out of range");
      return;
    }
    case BackendKind::Heisenberg: {
      const auto& t = a.heis();
      const auto& P = *impl_->heis;
      if (t.i >= P.pn || t.j >= P.pn || t.k >= P.pr)
        throw DomainError("triple residues out of range");
      return;
    }
    case BackendKind::Product: {
      const auto& t = a.tuple();
      if (t.size() != impl_->factors.size())
        throw DomainError("tuple arity " + std::to_string(t.size()) +
                          " does not match factor count " +
                          std::to_string(impl_->factors.size()));
      for (std::size_t i = 0; i < t.size(); ++i) impl_->factors[i].validate(t[i]);
      return;
    }
  }
}

Element GroupHandle::multiply(const Element& a, const Element& b) const {
  switch (impl_->kind_tag) {
    case BackendKind::Permutation:
      return Element(compose(a.perm(), b.perm()));
    case BackendKind::Abelian:
      return Element(AbelianVec{(a.abelian().a + b.abelian().a) % impl_->n1,
                                (a.abelian().b + b.abelian().b) % impl_->n2});
    case BackendKind::Heisenberg:
      return Element(hmul(*impl_->heis, a.heis(), b.heis()));
    case BackendKind::Product: {
      const auto& ta = a.tuple();
      const auto& tb = b.tuple();
      if (ta.size() != tb.size() || ta.size() != impl_->factors.size())
        throw DomainError("tuple arity mismatch in product multiply");
      ProductTuple out;
      out.reserve(ta.size());
      for (std::size_t i = 0; i < ta.size(); ++i)
        out.push_back(impl_->factors[i].multiply(ta[i], tb[i]));
      return Element(std::move(out));
    }
  }
  throw Error("unreachable backend tag");
}

Element GroupHandle::invert(const Element& a) const {
  switch (impl_->kind_tag) {
    case BackendKind::Permutation:
      return Element(a.perm().inverse());
    case BackendKind::Abelian:
      return Element(AbelianVec{(impl_->n1 - a.abelian().a) % impl_->n1,
                                (impl_->n2 - a.abelian().b) % impl_->n2});
    case BackendKind::Heisenberg:
      return Element(hinv(*impl_->heis, a.heis()));
    case BackendKind::Product: {
      ProductTuple out;
      for (std::size_t i = 0; i < a.tuple().size(); ++i)
        out.push_back(impl_->factors[i].invert(a.tuple()[i]));
      return Element(std::move(out));
    }
  }
  throw Error("unreachable backend tag");
}

Element GroupHandle::power(const Element& a, long long m) const {
  switch (impl_->kind_tag) {
    case BackendKind::Permutation:
      return Element(a.perm().power(m));
    case BackendKind::Abelian: {
      uint64_t ma = reduce_mod(m, impl_->n1), mb = reduce_mod(m, impl_->n2);
      auto mul = [](uint64_t x, uint64_t y, uint64_t mod) {
        return static_cast<uint64_t>(static_cast<unsigned __int128>(x) * y % mod);
      };
      return Element(AbelianVec{mul(a.abelian().a, ma, impl_->n1),
                                mul(a.abelian().b, mb, impl_->n2)});
    }
    case BackendKind::Heisenberg:
      return Element(hpow(*impl_->heis, a.heis(), m));
    case BackendKind::Product: {
      ProductTuple out;
      for (std::size_t i = 0; i < a.tuple().size(); ++i)
        out.push_back(impl_->factors[i].power(a.tuple()[i], m));
      return Element(std::move(out));
    }
  }
  throw Error("unreachable backend tag");
}

uint64_t GroupHandle::element_order(const Element& a) const {
  switch (impl_->kind_tag) {
    case BackendKind::Permutation:
      return a.perm().order();
    case BackendKind::Abelian: {
      uint64_t oa = impl_->n1 / std::gcd(a.abelian().a, impl_->n1);
      uint64_t ob = impl_->n2 / std::gcd(a.abelian().b, impl_->n2);
      return std::lcm(oa, ob);
    }
    case BackendKind::Heisenberg:
      return horder(*impl_->heis, a.heis());
    case BackendKind::Product: {
      uint64_t o = 1;
      for (std::size_t i = 0; i < a.tuple().size(); ++i)
        o = std::lcm(o, impl_->factors[i].element_order(a.tuple()[i]));
      return o;
    }
  }
  throw Error("unreachable backend tag");
}

Element GroupHandle::conjugate_by(const Element& g, const Element& h) const {
  return multiply(multiply(h, g), invert(h));
}

bool GroupHandle::is_generating_pair(const Element& a, const Element& b) const {
  validate(a);
  validate(b);
  switch (impl_->kind_tag) {
    case BackendKind::Permutation: {
      PermGroup sub(impl_->group->degree(), {a.perm(), b.perm()});
      return sub.order() == impl_->order;
    }
    case BackendKind::Abelian:
      return abelian_generates(impl_->n1, impl_->n2, a.abelian(), b.abelian());
    case BackendKind::Heisenberg:
      return hgenerates(*impl_->heis, a.heis(), b.heis());
    case BackendKind::Product: {
      bool coprime = true;
      for (std::size_t i = 0; coprime && i < impl_->factors.size(); ++i)
        for (std::size_t j = i + 1; coprime && j < impl_->factors.size(); ++j) {
          // Orders fit a wide integer; coprimality via the factor orders'
          // small prime sets would need factoring wide numbers, so test with
          // a gcd on the wide type directly.
          GroupOrder x = impl_->factors[i].order(), y = impl_->factors[j].order();
          while (y != 0) {
            GroupOrder t = x % y;
            x = y;
            y = t;
          }
          if (x != 1) coprime = false;
        }
      if (coprime) {
        for (std::size_t i = 0; i < impl_->factors.size(); ++i)
          if (!impl_->factors[i].is_generating_pair(a.tuple()[i], b.tuple()[i]))
            return false;
        return true;
      }
      if (impl_->all_perm_factors) {
        auto combine = [this](const Element& e) {
          std::vector<unsigned> img;
          img.reserve(impl_->combined_degree);
          unsigned offset = 0;
          for (std::size_t i = 0; i < impl_->factors.size(); ++i) {
            const auto& p = e.tuple()[i].perm();
            for (unsigned x = 0; x < p.degree(); ++x) img.push_back(p.at(x) + offset);
            offset += p.degree();
          }
          return Permutation::from_images(std::move(img));
        };
        PermGroup sub(impl_->combined_degree, {combine(a), combine(b)});
        return sub.order() == impl_->order;
      }
      if (impl_->order <= static_cast<GroupOrder>(impl_->bounds.enumeration_limit)) {
        std::set<Element> seen{identity()};
        std::vector<Element> frontier{identity()};
        while (!frontier.empty()) {
          std::vector<Element> next;
          for (const auto& e : frontier)
            for (const auto& g : {a, b}) {
              Element prod = multiply(e, g);
              if (seen.insert(prod).second) next.push_back(std::move(prod));
            }
          frontier = std::move(next);
        }
        return static_cast<GroupOrder>(seen.size()) == impl_->order;
      }
      throw CapabilityError(
          "no generation test applies: factors are neither coprime nor all "
          "permutation groups, and the order exceeds the enumeration bound");
    }
  }
  throw Error("unreachable backend tag");
}

ClassId GroupHandle::class_id(const Element& a) const {
  validate(a);
  switch (impl_->kind_tag) {
    case BackendKind::Permutation: {
      const auto& p = a.perm();
      if (impl_->ambient == Ambient::Symmetric)
        return ClassId{"t:" + type_string(p.cycle_type())};
      if (impl_->ambient == Ambient::Alternating) {
        auto type = p.cycle_type();
        std::string label = "t:" + type_string(type);
        if (alternating_class_splits(type))
          label += ";s:" + std::to_string(alternating_split_bit(p));
        return ClassId{label};
      }
      {
        std::lock_guard<std::mutex> lock(impl_->cache_mutex);
        auto hit = impl_->class_cache.find(p);
        if (hit != impl_->class_cache.end()) return ClassId{hit->second};
      }
      auto members = conjugacy_class(*impl_->group, p, impl_->bounds);
      std::string label = "m:" + members.front().str();  // sorted, so minimal
      {
        std::lock_guard<std::mutex> lock(impl_->cache_mutex);
        for (const auto& m : members) impl_->class_cache.emplace(m, label);
      }
      return ClassId{label};
    }
    case BackendKind::Abelian:
      return ClassId{"v:" + std::to_string(a.abelian().a) + "," +
                     std::to_string(a.abelian().b)};
    case BackendKind::Heisenberg:
      return ClassId{"h:" + hclass_label(*impl_->heis, a.heis())};
    case BackendKind::Product: {
      std::string label = "<";
      for (std::size_t i = 0; i < a.tuple().size(); ++i) {
        if (i) label += "|";
        label += impl_->factors[i].class_id(a.tuple()[i]).label;
      }
      return ClassId{label + ">"};
    }
  }
  throw Error("unreachable backend tag");
}

Element GroupHandle::parse_element(const std::string& raw) const {
  std::string text = trim(ascii_brackets(raw));
  switch (impl_->kind_tag) {
    case BackendKind::Permutation:
      return Element(Permutation::parse_cycles(impl_->group->degree(), text));
    case BackendKind::Abelian: {
      std::size_t i = 0;
      expect_char(text, i, '[');
      skip_ws(text, i);
      int64_t a = parse_int(text, i);
      expect_char(text, i, ',');
      skip_ws(text, i);
      int64_t b = parse_int(text, i);
      expect_char(text, i, ']');
      skip_ws(text, i);
      if (i != text.size()) throw ParseError("trailing characters", i);
      return Element(AbelianVec{reduce_mod(a, impl_->n1), reduce_mod(b, impl_->n2)});
    }
    case BackendKind::Heisenberg: {
      std::size_t i = 0;
      expect_char(text, i, '(');
      skip_ws(text, i);
      int64_t x = parse_int(text, i);
      expect_char(text, i, ',');
      skip_ws(text, i);
      int64_t y = parse_int(text, i);
      expect_char(text, i, ',');
      skip_ws(text, i);
      int64_t z = parse_int(text, i);
      expect_char(text, i, ')');
      skip_ws(text, i);
      if (i != text.size()) throw ParseError("trailing characters", i);
      const auto& P = *impl_->heis;
      return Element(
          Triple{reduce_mod(x, P.pn), reduce_mod(y, P.pn), reduce_mod(z, P.pr)});
    }
    case BackendKind::Product: {
      if (!text.empty() && text.front() == '<') {
        if (text.back() != '>') throw ParseError("unterminated tuple", text.size());
        std::string body = text.substr(1, text.size() - 2);
        std::vector<std::string> parts;
        int depth = 0;
        std::string cur;
        for (char c : body) {
          if (c == '<') ++depth;
          if (c == '>') --depth;
          if (c == '|' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
          } else {
            cur += c;
          }
        }
        parts.push_back(cur);
        if (parts.size() != impl_->factors.size())
          throw ParseError("tuple arity " + std::to_string(parts.size()) +
                               " does not match factor count " +
                               std::to_string(impl_->factors.size()),
                           0);
        ProductTuple out;
        for (std::size_t i = 0; i < parts.size(); ++i)
          out.push_back(impl_->factors[i].parse_element(parts[i]));
        return Element(std::move(out));
      }
      if (impl_->all_perm_factors) {
        // A single permutation of the summed degree, split at factor blocks.
        Permutation p = Permutation::parse_cycles(impl_->combined_degree, text);
        ProductTuple out;
        unsigned offset = 0;
        for (const auto& f : impl_->factors) {
          unsigned d = f.perm_group()->degree();
          std::vector<unsigned> img(d);
          for (unsigned x = 0; x < d; ++x) {
            unsigned y = p.at(offset + x);
            if (y < offset || y >= offset + d)
              throw ParseError("permutation does not preserve the factor block "
                               "starting at point " +
                                   std::to_string(offset + 1),
                               0);
            img[x] = y - offset;
          }
          out.push_back(Element(Permutation::from_images(std::move(img))));
          offset += d;
        }
        return Element(std::move(out));
      }
      throw ParseError("expected a tuple <elem | elem | ...>", 0);
    }
  }
  throw Error("unreachable backend tag");
}

std::string GroupHandle::render_element(const Element& a) const {
  switch (impl_->kind_tag) {
    case BackendKind::Permutation:
      return a.perm().str();
    case BackendKind::Abelian:
      return "[" + std::to_string(a.abelian().a) + "," +
             std::to_string(a.abelian().b) + "]";
    case BackendKind::Heisenberg:
      return hstr(a.heis());
    case BackendKind::Product: {
      std::string s = "⟨";
      for (std::size_t i = 0; i < a.tuple().size(); ++i) {
        if (i) s += " | ";
        s += impl_->factors[i].render_element(a.tuple()[i]);
      }
      return s + "⟩";
    }
  }
  throw Error("unreachable backend tag");
}

Element GroupHandle::random_element(std::mt19937_64& rng) const {
  switch (impl_->kind_tag) {
    case BackendKind::Permutation:
      return Element(impl_->group->random_element(rng));
    case BackendKind::Abelian:
      return Element(AbelianVec{uniform_index(rng, impl_->n1),
                                uniform_index(rng, impl_->n2)});
    case BackendKind::Heisenberg: {
      const auto& P = *impl_->heis;
      uint64_t i = uniform_index(rng, P.pn);
      uint64_t j = uniform_index(rng, P.pn);
      uint64_t k = uniform_index(rng, P.pr);
      return Element(Triple{i, j, k});
    }
    case BackendKind::Product: {
      ProductTuple out;
      for (const auto& f : impl_->factors) out.push_back(f.random_element(rng));
      return Element(std::move(out));
    }
  }
  throw Error("unreachable backend tag");
}

bool GroupHandle::enumerable() const {
  return impl_->order <= static_cast<GroupOrder>(impl_->bounds.enumeration_limit);
}

std::vector<Element> GroupHandle::elements() const {
  if (!enumerable())
    throw CapabilityError("group order " + order_to_string(impl_->order) +
                          " exceeds enumeration limit " +
                          std::to_string(impl_->bounds.enumeration_limit));
  switch (impl_->kind_tag) {
    case BackendKind::Permutation: {
      std::vector<Element> out;
      for (auto& p : impl_->group->elements(impl_->bounds.enumeration_limit))
        out.push_back(Element(std::move(p)));
      return out;
    }
    case BackendKind::Abelian: {
      std::vector<Element> out;
      for (uint64_t a = 0; a < impl_->n1; ++a)
        for (uint64_t b = 0; b < impl_->n2; ++b) out.push_back(Element(AbelianVec{a, b}));
      return out;
    }
    case BackendKind::Heisenberg: {
      const auto& P = *impl_->heis;
      std::vector<Element> out;
      for (uint64_t i = 0; i < P.pn; ++i)
        for (uint64_t j = 0; j < P.pn; ++j)
          for (uint64_t k = 0; k < P.pr; ++k) out.push_back(Element(Triple{i, j, k}));
      return out;
    }
    case BackendKind::Product: {
      std::vector<std::vector<Element>> per;
      for (const auto& f : impl_->factors) per.push_back(f.elements());
      std::vector<Element> out{Element(ProductTuple{})};
      for (const auto& fac : per) {
        std::vector<Element> next;
        next.reserve(out.size() * fac.size());
        for (const auto& partial : out)
          for (const auto& e : fac) {
            ProductTuple t = partial.tuple();
            t.push_back(e);
            next.push_back(Element(std::move(t)));
          }
        out = std::move(next);
      }
      return out;
    }
  }
  throw Error("unreachable backend tag");
}

}  // namespace bvl
