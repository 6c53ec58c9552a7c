#include "bvl/certificate.hpp"

#include <algorithm>
#include <array>

#include "bvl/catalog.hpp"
#include "bvl/heisenberg.hpp"

namespace bvl {

namespace {

using nlohmann::json;

json bounds_json(const Bounds& b) {
  return json{{"centralizer_limit", b.centralizer_limit},
              {"classify_order_limit", b.classify_order_limit},
              {"enumeration_limit", b.enumeration_limit},
              {"exhaustive_aut_limit", b.exhaustive_aut_limit},
              {"max_symmetric_degree", b.max_symmetric_degree},
              {"orbit_limit", b.orbit_limit}};
}

const char* status_name(SrStatus s) {
  switch (s) {
    case SrStatus::Witnessed: return "stronglyReal";
    case SrStatus::ExhaustedNonReal: return "nonStronglyReal";
    case SrStatus::Indeterminate: return "indeterminate";
  }
  throw Error("unhandled strong-reality status");
}

json structure_json(const GroupHandle& G, const BeauvilleStructure& s) {
  return json{{"x1", G.render_element(s.p1.x)},
              {"y1", G.render_element(s.p1.y)},
              {"x2", G.render_element(s.p2.x)},
              {"y2", G.render_element(s.p2.y)}};
}

json witness_json(const GroupHandle& G, const RealityWitness& w) {
  return json{{"phi", aut_map_json(G, w.phi)},
              {"g1", G.render_element(w.g1)},
              {"g2", G.render_element(w.g2)}};
}

RealityWitness witness_from_json(const GroupHandle& G, const json& j) {
  RealityWitness w;
  w.phi = aut_map_from_json(G, j.at("phi"));
  w.g1 = G.parse_element(j.at("g1").get<std::string>());
  w.g2 = G.parse_element(j.at("g2").get<std::string>());
  return w;
}

json base_certificate(const GroupHandle& G, const std::string& spec_text,
                      const std::string& schema) {
  return json{{"tool", "beauville"},
              {"version", kToolVersion},
              {"schema", schema},
              {"group", spec_text},
              {"order", order_to_string(G.order())},
              {"bounds", bounds_json(G.bounds())}};
}

std::array<Element, 4> parse_structure(const GroupHandle& G, const json& sj) {
  return {G.parse_element(sj.at("x1").get<std::string>()),
          G.parse_element(sj.at("y1").get<std::string>()),
          G.parse_element(sj.at("x2").get<std::string>()),
          G.parse_element(sj.at("y2").get<std::string>())};
}

[[noreturn]] void mismatch(const std::string& what) {
  throw Error("certificate recheck failed: " + what);
}

}  // namespace

json aut_map_json(const GroupHandle& G, const AutMap& phi) {
  switch (phi.kind) {
    case AutMap::Kind::Identity:
      return json{{"kind", "identity"}};
    case AutMap::Kind::Conjugation: {
      // Ambient conjugators may lie outside the group (odd permutations
      // acting on an alternating group), so they are stored as raw cycles.
      std::string by = phi.ambient ? phi.conj.perm().str()
                                   : G.render_element(phi.conj);
      return json{{"kind", "conjugation"}, {"by", by}, {"ambient", phi.ambient}};
    }
    case AutMap::Kind::Inversion:
      return json{{"kind", "inversion"}};
    case AutMap::Kind::HeisPair:
      return json{{"kind", "heisPair"},
                  {"x", hstr(phi.heis->u)},
                  {"y", hstr(phi.heis->v)}};
    case AutMap::Kind::Table: {
      json rows = json::array();
      for (const auto& [from, to] : *phi.table)
        rows.push_back(json::array(
            {G.render_element(from), G.render_element(to)}));
      return json{{"kind", "table"}, {"map", rows}};
    }
    case AutMap::Kind::Tuple: {
      const auto& factors = *G.factors();
      json parts = json::array();
      for (std::size_t f = 0; f < phi.components.size(); ++f)
        parts.push_back(aut_map_json(factors[f], phi.components[f]));
      return json{{"kind", "tuple"}, {"components", parts}};
    }
  }
  throw Error("unhandled automorphism kind");
}

AutMap aut_map_from_json(const GroupHandle& G, const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "identity") return AutMap::identity();
  if (kind == "conjugation") {
    bool ambient = j.at("ambient").get<bool>();
    const std::string by = j.at("by").get<std::string>();
    if (ambient) {
      const PermGroup* P = G.perm_group();
      if (!P) throw DomainError("ambient conjugation needs a permutation group");
      return AutMap::conjugation(
          Element(Permutation::parse_cycles(P->degree(), by)), true);
    }
    return AutMap::conjugation(G.parse_element(by));
  }
  if (kind == "inversion") return AutMap::inversion();
  if (kind == "heisPair") {
    const HeisParams* P = G.heis_params();
    if (!P) throw DomainError("heisPair automorphism needs a Heisenberg group");
    Triple u = G.parse_element(j.at("x").get<std::string>()).heis();
    Triple v = G.parse_element(j.at("y").get<std::string>()).heis();
    return AutMap::heis_pair(haut_from_pair(*P, u, v));
  }
  if (kind == "table") {
    auto table = std::make_shared<std::map<Element, Element>>();
    for (const auto& row : j.at("map"))
      table->emplace(G.parse_element(row.at(0).get<std::string>()),
                     G.parse_element(row.at(1).get<std::string>()));
    return AutMap::lookup_table(std::move(table));
  }
  if (kind == "tuple") {
    const auto* factors = G.factors();
    if (!factors) throw DomainError("tuple automorphism needs a product group");
    const auto& parts = j.at("components");
    if (parts.size() != factors->size())
      throw DomainError("tuple automorphism arity mismatch");
    std::vector<AutMap> components;
    for (std::size_t f = 0; f < parts.size(); ++f)
      components.push_back(aut_map_from_json((*factors)[f], parts[f]));
    return AutMap::tuple(std::move(components));
  }
  throw DomainError("unknown automorphism kind '" + kind + "'");
}

void validate_aut_map(const GroupHandle& G, const AutMap& phi) {
  switch (phi.kind) {
    case AutMap::Kind::Identity:
      return;
    case AutMap::Kind::Conjugation:
      if (const PermGroup* P = G.perm_group()) {
        if (!phi.ambient && !P->contains(phi.conj.perm()))
          throw Error("conjugator lies outside the group");
        if (phi.ambient && G.perm_ambient() != Ambient::Alternating)
          throw Error("ambient conjugation is only declared for alternating groups");
      } else {
        G.validate(phi.conj);
      }
      return;
    case AutMap::Kind::Inversion:
      if (G.kind() != BackendKind::Abelian)
        throw Error("inversion is only an automorphism of abelian groups");
      return;
    case AutMap::Kind::HeisPair:
      // haut_from_pair already proved the images generate; nothing further.
      if (!G.heis_params()) throw Error("heisPair map on a non-Heisenberg group");
      return;
    case AutMap::Kind::Table: {
      const auto& table = *phi.table;
      auto elements = G.elements();
      if (table.size() != elements.size())
        throw Error("automorphism table does not cover the group");
      std::set<Element> image;
      for (const auto& g : elements) {
        auto it = table.find(g);
        if (it == table.end()) throw Error("automorphism table misses an element");
        image.insert(it->second);
      }
      if (image.size() != elements.size())
        throw Error("automorphism table is not a bijection");
      for (const auto& a : elements)
        for (const auto& b : elements)
          if (table.at(G.multiply(a, b)) !=
              G.multiply(table.at(a), table.at(b)))
            throw Error("automorphism table violates the homomorphism law");
      return;
    }
    case AutMap::Kind::Tuple: {
      const auto& factors = *G.factors();
      if (phi.components.size() != factors.size())
        throw Error("tuple automorphism arity mismatch");
      for (std::size_t f = 0; f < factors.size(); ++f)
        validate_aut_map(factors[f], phi.components[f]);
      return;
    }
  }
  throw Error("unhandled automorphism kind");
}

json verify_certificate(const GroupHandle& G, const std::string& spec_text,
                        const Element& x1, const Element& y1,
                        const Element& x2, const Element& y2,
                        const VerifyResult& r) {
  json cert = base_certificate(G, spec_text, "verify");
  cert["structure"] = json{{"x1", G.render_element(x1)},
                           {"y1", G.render_element(y1)},
                           {"x2", G.render_element(x2)},
                           {"y2", G.render_element(y2)}};
  cert["verdict"] = r.ok ? "verified" : "refuted";
  if (r.ok) {
    cert["type"] = type_string(*r.type);
  } else {
    cert["failure"] = r.failure;
    if (r.overlap) cert["overlap"] = r.overlap->label;
  }
  return cert;
}

json reality_certificate(const GroupHandle& G, const std::string& spec_text,
                         const BeauvilleStructure& s, const SrResult& sr) {
  json cert = base_certificate(G, spec_text, "reality");
  cert["structure"] = structure_json(G, s);
  cert["type"] = type_string(structure_type(s));
  cert["verdict"] = status_name(sr.status);
  cert["backend"] = sr.backend_selector;
  cert["exhaustive"] = sr.backend.exhaustive;
  cert["assumptions"] = sr.backend.assumptions;
  if (sr.witness) cert["witness"] = witness_json(G, *sr.witness);
  return cert;
}

json classify_certificate(const GroupHandle& G, const std::string& spec_text,
                          const ClassifyReport& report) {
  json cert = base_certificate(G, spec_text, "classify");
  cert["verdict"] = verdict_name(report.verdict);
  cert["backend"] = report.backend_selector;
  cert["exhaustive"] = report.backend.exhaustive;
  cert["assumptions"] = report.backend.assumptions;
  cert["reduction"] = report.reduction;
  cert["counts"] = json{{"generatingPairs", report.generating_pairs},
                        {"firstPairReps", report.first_pair_reps},
                        {"secondPairsTried", report.second_pairs_tried},
                        {"stronglyReal", report.witnessed},
                        {"certifiedNonReal", report.certified_non_real}};
  std::vector<const ClassifiedStructure*> ordered;
  for (const auto& cs : report.structures) ordered.push_back(&cs);
  auto key = [&](const ClassifiedStructure* cs) {
    return std::array<std::string, 4>{G.render_element(cs->structure.p1.x),
                                      G.render_element(cs->structure.p1.y),
                                      G.render_element(cs->structure.p2.x),
                                      G.render_element(cs->structure.p2.y)};
  };
  std::sort(ordered.begin(), ordered.end(),
            [&](auto* a, auto* b) { return key(a) < key(b); });
  json list = json::array();
  for (const auto* cs : ordered) {
    json entry = structure_json(G, cs->structure);
    entry["type"] = type_string(structure_type(cs->structure));
    entry["status"] = status_name(cs->sr.status);
    if (cs->sr.witness) entry["witness"] = witness_json(G, *cs->sr.witness);
    list.push_back(std::move(entry));
  }
  cert["structures"] = std::move(list);
  return cert;
}

json search_certificate(const GroupHandle& G, const std::string& spec_text,
                        const SearchOptions& opt,
                        const std::vector<BeauvilleStructure>& found) {
  json cert = base_certificate(G, spec_text, "search");
  cert["systematic"] = opt.systematic;
  cert["budget"] = opt.budget;
  if (!opt.systematic) cert["seed"] = opt.seed;
  json list = json::array();
  for (const auto& s : found) {
    json entry = structure_json(G, s);
    entry["type"] = type_string(structure_type(s));
    list.push_back(std::move(entry));
  }
  cert["structures"] = std::move(list);
  return cert;
}

std::string certificate_text(const json& cert) { return cert.dump(2) + "\n"; }

std::string recheck_certificate(const json& cert, const Bounds& bounds) {
  if (cert.value("tool", "") != "beauville")
    throw DomainError("not a beauville certificate");
  const std::string schema = cert.at("schema").get<std::string>();
  if (schema != "verify" && schema != "reality" && schema != "classify" &&
      schema != "search")
    throw DomainError("unknown certificate schema '" + schema + "'");
  const std::string spec_text = cert.at("group").get<std::string>();
  auto G = build_group(spec_text, bounds);
  if (cert.at("order").get<std::string>() != order_to_string(G.order()))
    mismatch("group order changed");

  if (schema == "verify") {
    auto e = parse_structure(G, cert.at("structure"));
    auto r = verify_structure(G, e[0], e[1], e[2], e[3]);
    const std::string verdict = cert.at("verdict").get<std::string>();
    if ((verdict == "verified") != r.ok) mismatch("verification verdict");
    if (r.ok && cert.at("type").get<std::string>() != type_string(*r.type))
      mismatch("structure type");
    if (!r.ok && cert.at("failure").get<std::string>() != r.failure)
      mismatch("failure reason");
    return "verify certificate for " + spec_text + ": valid (" + verdict + ")";
  }

  if (schema == "reality") {
    auto e = parse_structure(G, cert.at("structure"));
    BeauvilleStructure s{make_generating_pair(G, e[0], e[1]),
                         make_generating_pair(G, e[2], e[3])};
    if (cert.at("type").get<std::string>() != type_string(structure_type(s)))
      mismatch("structure type");
    const std::string verdict = cert.at("verdict").get<std::string>();
    if (verdict == "stronglyReal") {
      RealityWitness w = witness_from_json(G, cert.at("witness"));
      validate_aut_map(G, w.phi);
      check_witness(G, s, w);
    } else {
      auto backend = AutBackend::parse(cert.at("backend").get<std::string>());
      auto sr = sr_check(G, s, backend);
      if (status_name(sr.status) != verdict) mismatch("strong-reality status");
      if (cert.at("exhaustive").get<bool>() != sr.backend.exhaustive)
        mismatch("exhaustiveness flag");
    }
    return "reality certificate for " + spec_text + ": valid (" + verdict + ")";
  }

  if (schema == "classify") {
    auto backend = AutBackend::parse(cert.at("backend").get<std::string>());
    auto report = classify(G, backend);
    json fresh = classify_certificate(G, spec_text, report);
    for (const char* field :
         {"verdict", "counts", "reduction", "exhaustive", "assumptions"})
      if (fresh.at(field) != cert.at(field)) mismatch(field);
    if (fresh.at("structures").size() != cert.at("structures").size())
      mismatch("structure count");
    for (std::size_t k = 0; k < fresh.at("structures").size(); ++k) {
      const auto& have = cert.at("structures")[k];
      const auto& want = fresh.at("structures")[k];
      for (const char* field : {"x1", "y1", "x2", "y2", "type", "status"})
        if (have.at(field) != want.at(field))
          mismatch("structure " + std::to_string(k) + " " + field);
      // Witness arithmetic is re-checked from the certificate's own data,
      // independently of what the fresh run produced.
      if (have.contains("witness")) {
        auto e = parse_structure(G, have);
        BeauvilleStructure s{make_generating_pair(G, e[0], e[1]),
                             make_generating_pair(G, e[2], e[3])};
        RealityWitness w = witness_from_json(G, have.at("witness"));
        validate_aut_map(G, w.phi);
        check_witness(G, s, w);
      } else if (have.at("status").get<std::string>() ==
                 std::string("stronglyReal")) {
        mismatch("strongly real entry without witness");
      }
    }
    return "classify certificate for " + spec_text + ": valid (" +
           cert.at("verdict").get<std::string>() + ", " +
           std::to_string(cert.at("structures").size()) + " structures)";
  }

  if (schema == "search") {
    for (const auto& entry : cert.at("structures")) {
      auto e = parse_structure(G, entry);
      auto r = verify_structure(G, e[0], e[1], e[2], e[3]);
      if (!r.ok) mismatch("listed structure fails verification");
      if (entry.at("type").get<std::string>() != type_string(*r.type))
        mismatch("structure type");
    }
    return "search certificate for " + spec_text + ": valid (" +
           std::to_string(cert.at("structures").size()) + " structures)";
  }

  throw DomainError("unknown certificate schema '" + schema + "'");
}

}  // namespace bvl
