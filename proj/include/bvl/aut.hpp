// Automorphism suppliers for strong-reality checking.
//
// A backend yields a stream of automorphisms of a particular shape; only
// backends whose stream provably covers all of Aut(G) may certify that no
// witness exists. Declared backends lean on curated facts (e.g. the outer
// automorphism groups of M11 and A(n)); every such fact is surfaced in the
// stream's info so certificates can record what was assumed.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bvl/element.hpp"
#include "bvl/group_handle.hpp"
#include "bvl/heisenberg.hpp"

namespace bvl {

struct AutMap {
  enum class Kind { Identity, Conjugation, Inversion, HeisPair, Table, Tuple };
  Kind kind = Kind::Identity;
  Element conj;          // Conjugation: the conjugating element
  bool ambient = false;  // conjugator lives in the ambient symmetric group
  std::optional<HeisAut> heis;
  std::shared_ptr<const std::map<Element, Element>> table;
  std::vector<AutMap> components;  // Tuple: one map per product factor

  static AutMap identity();
  static AutMap conjugation(Element by, bool ambient = false);
  static AutMap inversion();
  static AutMap heis_pair(const HeisAut& h);
  static AutMap lookup_table(std::shared_ptr<const std::map<Element, Element>> t);
  static AutMap tuple(std::vector<AutMap> parts);
};

Element apply_aut(const GroupHandle& G, const AutMap& phi, const Element& g);
std::string describe_aut(const GroupHandle& G, const AutMap& phi);

struct AutBackend {
  enum class Kind { Inner, Inversion, HeisFull, Exhaustive, Product, Declared };
  Kind kind = Kind::Inner;
  std::string declared_name;     // Declared: registry key, e.g. "M11", "S(7)"
  std::vector<AutBackend> sub;   // Product: one backend per factor

  // Selector grammar: inner | inversion | heis-full | exhaustive |
  // product(sel,sel,...) | declared:<name> | auto.
  static AutBackend parse(const std::string& selector);
  static AutBackend automatic(const GroupHandle& G);  // per-shape default
  std::string selector() const;
};

struct AutBackendInfo {
  bool exhaustive = false;                // stream covers all of Aut(G)
  std::vector<std::string> assumptions;   // declared facts relied upon
};

// Applicability check; throws CapabilityError with the reason when the
// backend does not fit the group's shape.
AutBackendInfo backend_info(const AutBackend& b, const GroupHandle& G);

class AutStream {
 public:
  virtual ~AutStream() = default;
  virtual std::optional<AutMap> next() = 0;
};

// Fresh pull-based stream; restart by creating another.
std::unique_ptr<AutStream> make_aut_stream(const AutBackend& b, const GroupHandle& G);

// Conjugation maps cover Aut exactly for these registry entries.
bool declared_outer_trivial(const GroupHandle& G);        // e.g. M11
bool declared_symmetric_completion(const GroupHandle& G); // A(n), n>=4, n!=6
// Pairwise non-isomorphic directly indecomposable factors, the declared
// basis for Aut(G x H) = Aut(G) x Aut(H) beyond the coprime case.
bool declared_indecomposable_distinct(const std::vector<GroupHandle>& factors);

}  // namespace bvl
