// Beauville structures and strong reality.
//
// A structure is two generating pairs whose sigma sets (all conjugates of
// all powers of x, y and xy) meet only in the identity. A reality witness
// is an automorphism phi with elements g1, g2 conjugating phi(x_i), phi(y_i)
// to the inverses simultaneously; "not strongly real" is only ever certified
// by exhausting a backend that provably covers Aut(G).
#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bvl/aut.hpp"
#include "bvl/group_handle.hpp"

namespace bvl {

struct GeneratingPair {
  Element x, y, xy;
  uint64_t ox = 0, oy = 0, oxy = 0;
};

// Throws DomainError when (x, y) does not generate G.
GeneratingPair make_generating_pair(const GroupHandle& G, Element x, Element y);

using SigmaSet = std::set<ClassId>;

// Classes of all powers of x, y and xy (the identity class included).
SigmaSet sigma_set(const GroupHandle& G, const Element& x, const Element& y);

struct BeauvilleStructure {
  GeneratingPair p1, p2;
};

struct StructureType {
  std::array<uint64_t, 3> first{}, second{};
};
StructureType structure_type(const BeauvilleStructure& s);
std::string type_string(const StructureType& t);  // ((o1,o2,o3),(o4,o5,o6))

struct VerifyResult {
  bool ok = false;
  std::string failure;             // names the failed condition when !ok
  std::optional<ClassId> overlap;  // a shared nontrivial class, if that failed
  std::optional<StructureType> type;
  std::optional<BeauvilleStructure> structure;  // present when ok
};

VerifyResult verify_structure(const GroupHandle& G, const Element& x1,
                              const Element& y1, const Element& x2,
                              const Element& y2);

struct RealityWitness {
  AutMap phi;
  Element g1, g2;
};

// Re-derives both inversion equations; throws Error on any mismatch.
void check_witness(const GroupHandle& G, const BeauvilleStructure& s,
                   const RealityWitness& w);

enum class SrStatus { Witnessed, ExhaustedNonReal, Indeterminate };

struct SrResult {
  SrStatus status = SrStatus::Indeterminate;
  std::optional<RealityWitness> witness;
  std::string backend_selector;
  AutBackendInfo backend;
};

SrResult sr_check(const GroupHandle& G, const BeauvilleStructure& s,
                  const AutBackend& backend);

enum class Verdict {
  NotTwoGenerated,
  NotBeauville,
  PurelyStronglyReal,
  PurelyNonStronglyReal,
  Mixed
};
std::string verdict_name(Verdict v);

struct ClassifiedStructure {
  BeauvilleStructure structure;
  SrResult sr;
};

struct ClassifyReport {
  Verdict verdict = Verdict::NotTwoGenerated;
  std::size_t generating_pairs = 0;   // ordered generating pairs in G
  std::size_t first_pair_reps = 0;    // representatives examined as first pair
  std::size_t second_pairs_tried = 0; // per-representative candidates, summed
  std::size_t witnessed = 0;
  std::size_t certified_non_real = 0;
  std::string reduction;              // how first pairs were reduced
  std::string backend_selector;
  AutBackendInfo backend;
  std::vector<ClassifiedStructure> structures;  // first pair always a rep
};

// Examines every structure up to the first-pair reduction. Witness-only
// backends may still conclude purelyStronglyReal when every structure gets a
// witness; any unresolved structure raises CapabilityError instead of a
// guessed verdict.
ClassifyReport classify(const GroupHandle& G, const AutBackend& backend,
                        unsigned threads = 1);

struct SearchOptions {
  uint64_t budget = 10000;   // candidate structures to examine
  uint64_t seed = 0;
  std::size_t max_results = 1;
  bool systematic = false;   // enumerate pairs instead of sampling
  // Tried before any sampling, e.g. pairs taken from a structure file.
  std::vector<std::array<Element, 4>> hints;
};

// Verified structures only; an empty result is not a nonexistence proof.
std::vector<BeauvilleStructure> search_structures(const GroupHandle& G,
                                                  const SearchOptions& opt);

struct ClassInversionRow {
  ClassId id;
  Element representative;
  uint64_t order = 0;        // element order within the class
  GroupOrder size = 0;
  bool invertible = false;   // some backend map sends the class onto its inverse
};

struct ClassInversionReport {
  std::vector<ClassInversionRow> rows;
  std::string backend_selector;
  AutBackendInfo backend;
};

ClassInversionReport class_inversion_report(const GroupHandle& G,
                                            const AutBackend& backend);

}  // namespace bvl
