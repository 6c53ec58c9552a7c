#pragma once

#include <string>
#include <vector>

#include "bvl/engine.hpp"
#include "json.hpp"

namespace bvl {

inline constexpr const char* kToolVersion = "1.0.0";

// Machine-readable verdict documents. Keys are emitted in sorted order and
// no volatile data (timestamps, paths, thread counts) is embedded, so a
// repeated invocation with the same seed produces identical bytes.
nlohmann::json verify_certificate(const GroupHandle& G,
                                  const std::string& spec_text,
                                  const Element& x1, const Element& y1,
                                  const Element& x2, const Element& y2,
                                  const VerifyResult& r);
nlohmann::json reality_certificate(const GroupHandle& G,
                                   const std::string& spec_text,
                                   const BeauvilleStructure& s,
                                   const SrResult& sr);
nlohmann::json classify_certificate(const GroupHandle& G,
                                    const std::string& spec_text,
                                    const ClassifyReport& report);
nlohmann::json search_certificate(const GroupHandle& G,
                                  const std::string& spec_text,
                                  const SearchOptions& opt,
                                  const std::vector<BeauvilleStructure>& found);

// Canonical byte serialization of a certificate.
std::string certificate_text(const nlohmann::json& cert);

// Serialized automorphisms carry enough structure to be rebuilt and
// re-validated without trusting the producer.
nlohmann::json aut_map_json(const GroupHandle& G, const AutMap& phi);
AutMap aut_map_from_json(const GroupHandle& G, const nlohmann::json& j);

// Proves phi is an automorphism from its serialized description alone;
// table maps get a full multiplication-table check. Throws on failure.
void validate_aut_map(const GroupHandle& G, const AutMap& phi);

// Re-validates a certificate from scratch: structures are re-verified,
// witnesses re-checked arithmetically, exhaustion verdicts re-run against
// the recorded backend. Returns a one-line summary; throws on any mismatch.
std::string recheck_certificate(const nlohmann::json& cert,
                                const Bounds& bounds = Bounds::defaults());

}  // namespace bvl
