// Command-line front end: builds groups from spec strings, runs the engine
// operations, and emits human-readable reports plus JSON certificates.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "bvl/catalog.hpp"
#include "bvl/certificate.hpp"

using namespace bvl;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Bounds load_bounds(const std::string& flag_dir) {
  std::string dir = flag_dir;
  if (dir.empty())
    if (const char* env = std::getenv("BEAUVILLE_BOUNDS_DIR")) dir = env;
  Bounds b = Bounds::defaults();
  if (dir.empty()) return b;
  const std::string path = dir + "/bounds.json";
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read bounds file '" + path + "'", 0);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("bounds file '" + path + "': " + e.what(), 0);
  }
  const std::map<std::string, std::size_t*> fields{
      {"orbit_limit", &b.orbit_limit},
      {"centralizer_limit", &b.centralizer_limit},
      {"enumeration_limit", &b.enumeration_limit},
      {"exhaustive_aut_limit", &b.exhaustive_aut_limit},
      {"classify_order_limit", &b.classify_order_limit}};
  for (const auto& [key, value] : doc.items()) {
    if (key == "max_symmetric_degree") {
      b.max_symmetric_degree = value.get<unsigned>();
    } else if (auto it = fields.find(key); it != fields.end()) {
      *it->second = value.get<std::size_t>();
    } else {
      throw ParseError("bounds file '" + path + "': unknown key '" + key + "'",
                       0);
    }
  }
  return b;
}

// A structure file holds four labeled element literals; `paper.m11a5` and
// `paper.an` are built-in names usable without a file.
std::array<Element, 4> load_structure(const GroupHandle& G,
                                      const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    if (path == "paper.m11a5") {
      auto H = paper_m11a5_group();
      auto pp = paper_m11a5_structure();
      return {G.parse_element(H.render_element(pp.x1)),
              G.parse_element(H.render_element(pp.y1)),
              G.parse_element(H.render_element(pp.x2)),
              G.parse_element(H.render_element(pp.y2))};
    }
    if (path == "paper.an") {
      const PermGroup* P = G.perm_group();
      if (!P)
        throw DomainError(
            "the paper.an structure needs an alternating-group spec");
      auto pp = paper_an_structure(P->degree());
      return {pp.x1, pp.y1, pp.x2, pp.y2};
    }
    throw ParseError("structure file not found: " + path, 0);
  }
  std::map<std::string, std::string> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("structure file line " + std::to_string(lineno) +
                           ": expected 'name = element'",
                       lineno);
    std::string name = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (name != "x1" && name != "y1" && name != "x2" && name != "y2")
      throw ParseError("structure file line " + std::to_string(lineno) +
                           ": unknown label '" + name + "'",
                       lineno);
    if (!values.emplace(name, value).second)
      throw ParseError("structure file line " + std::to_string(lineno) +
                           ": duplicate label '" + name + "'",
                       lineno);
  }
  for (const char* need : {"x1", "y1", "x2", "y2"})
    if (!values.count(need))
      throw ParseError("structure file is missing '" + std::string(need) + "'",
                       0);
  return {G.parse_element(values["x1"]), G.parse_element(values["y1"]),
          G.parse_element(values["x2"]), G.parse_element(values["y2"])};
}

void write_certificate(const std::string& path, const json& cert) {
  if (path.empty()) return;
  const std::string text = certificate_text(cert);
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write certificate to '" + path + "'");
  out << text;
}

AutBackend pick_backend(const GroupHandle& G, const std::string& selector) {
  if (selector == "auto") return AutBackend::automatic(G);
  return AutBackend::parse(selector);
}

void print_sr(const GroupHandle& G, const SrResult& sr) {
  switch (sr.status) {
    case SrStatus::Witnessed:
      std::cout << "stronglyReal: phi = " << describe_aut(G, sr.witness->phi)
                << ", g1 = " << G.render_element(sr.witness->g1)
                << ", g2 = " << G.render_element(sr.witness->g2) << "\n";
      break;
    case SrStatus::ExhaustedNonReal:
      std::cout << "nonStronglyReal: backend " << sr.backend_selector
                << " exhausted without a witness\n";
      break;
    case SrStatus::Indeterminate:
      std::cout << "indeterminate: backend " << sr.backend_selector
                << " is not exhaustive and found no witness\n";
      break;
  }
  for (const auto& a : sr.backend.assumptions)
    std::cout << "assumes: " << a << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beauville structure toolkit for finite groups"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string spec, structure_path, backend = "auto", cert_path, bounds_dir;
  std::string x_text, y_text, cert_file;
  uint64_t seed = 0, budget = 10000;
  std::size_t max_results = 1;
  unsigned threads = 1, an_degree = 7;
  bool systematic = false;

  app.add_option("--bounds-dir", bounds_dir,
                 "directory with bounds.json (default: $BEAUVILLE_BOUNDS_DIR)");

  auto add_spec = [&](CLI::App* cmd) {
    cmd->add_option("spec", spec, "group specification, e.g. \"M11 x A5\"")
        ->required();
  };
  auto add_cert = [&](CLI::App* cmd) {
    cmd->add_option("--cert", cert_path, "write a JSON certificate here ('-' for stdout)");
  };
  auto add_backend = [&](CLI::App* cmd) {
    cmd->add_option("--backend", backend,
                    "automorphism backend selector (default: auto)");
  };

  auto* cmd_order = app.add_subcommand("order", "print the group order");
  add_spec(cmd_order);

  auto* cmd_sigma =
      app.add_subcommand("sigma", "print the sigma-set classes of a pair");
  add_spec(cmd_sigma);
  cmd_sigma->add_option("--x", x_text, "first element")->required();
  cmd_sigma->add_option("--y", y_text, "second element")->required();

  auto* cmd_verify =
      app.add_subcommand("verify", "check a Beauville structure");
  add_spec(cmd_verify);
  cmd_verify->add_option("--structure", structure_path,
                         "structure file, or paper.m11a5 / paper.an")
      ->required();
  add_cert(cmd_verify);

  auto* cmd_reality =
      app.add_subcommand("reality", "decide strong reality of a structure");
  add_spec(cmd_reality);
  cmd_reality->add_option("--structure", structure_path,
                          "structure file, or paper.m11a5 / paper.an")
      ->required();
  add_backend(cmd_reality);
  add_cert(cmd_reality);

  auto* cmd_classify = app.add_subcommand(
      "classify", "classify every Beauville structure of the group");
  add_spec(cmd_classify);
  add_backend(cmd_classify);
  cmd_classify->add_option("--threads", threads, "worker threads (default 1)");
  add_cert(cmd_classify);

  auto* cmd_search =
      app.add_subcommand("search", "look for Beauville structures");
  add_spec(cmd_search);
  cmd_search->add_option("--budget", budget, "candidates to examine");
  cmd_search->add_option("--seed", seed, "random seed");
  cmd_search->add_option("--max", max_results, "stop after this many finds");
  cmd_search->add_flag("--systematic", systematic,
                       "enumerate generating pairs instead of sampling");
  cmd_search->add_option("--structure", structure_path,
                         "optional hint structure tried first");
  add_cert(cmd_search);

  auto* cmd_report = app.add_subcommand(
      "report-classes", "class-by-class inversion report");
  add_spec(cmd_report);
  add_backend(cmd_report);

  auto* cmd_paper_an = app.add_subcommand(
      "paper-an", "verify the alternating-group construction at degree n");
  cmd_paper_an->add_option("n", an_degree, "degree, at least 7")->required();
  add_cert(cmd_paper_an);

  auto* cmd_m11a5 = app.add_subcommand(
      "paper-m11a5", "verify the degree-16 example and its obstruction");
  add_cert(cmd_m11a5);

  auto* cmd_macbeath = app.add_subcommand(
      "macbeath", "check inner inversion of every L2(8) generating pair");

  auto* cmd_recheck =
      app.add_subcommand("recheck", "re-validate a certificate file");
  cmd_recheck->add_option("certificate", cert_file, "certificate JSON file")
      ->required();

  try {
    app.parse(argc, argv);
    const Bounds bounds = load_bounds(bounds_dir);

    if (*cmd_order) {
      auto G = build_group(spec, bounds);
      std::cout << "order(" << G.name() << ") = " << order_to_string(G.order())
                << "\n";
    } else if (*cmd_sigma) {
      auto G = build_group(spec, bounds);
      auto labels =
          sigma_set(G, G.parse_element(x_text), G.parse_element(y_text));
      std::cout << "sigma set in " << G.name() << ": " << labels.size()
                << " classes\n";
      for (const auto& c : labels) std::cout << "  " << c.label << "\n";
    } else if (*cmd_verify) {
      auto G = build_group(spec, bounds);
      auto e = load_structure(G, structure_path);
      auto r = verify_structure(G, e[0], e[1], e[2], e[3]);
      if (r.ok) {
        std::cout << "verified: type " << type_string(*r.type) << "\n";
      } else {
        std::cout << "refuted: " << r.failure << "\n";
        if (r.overlap) std::cout << "shared class: " << r.overlap->label << "\n";
      }
      write_certificate(cert_path,
                        verify_certificate(G, G.name(), e[0], e[1], e[2], e[3], r));
    } else if (*cmd_reality) {
      auto G = build_group(spec, bounds);
      auto e = load_structure(G, structure_path);
      auto r = verify_structure(G, e[0], e[1], e[2], e[3]);
      if (!r.ok) throw DomainError("not a Beauville structure: " + r.failure);
      auto sr = sr_check(G, *r.structure, pick_backend(G, backend));
      print_sr(G, sr);
      write_certificate(cert_path,
                        reality_certificate(G, G.name(), *r.structure, sr));
    } else if (*cmd_classify) {
      auto G = build_group(spec, bounds);
      auto report = classify(G, pick_backend(G, backend), threads);
      std::cout << "verdict: " << verdict_name(report.verdict) << "\n"
                << "generating pairs: " << report.generating_pairs << "\n"
                << "first-pair reduction: " << report.reduction << " ("
                << report.first_pair_reps << " representatives)\n"
                << "second pairs tried: " << report.second_pairs_tried << "\n"
                << "structures: " << report.structures.size() << " ("
                << report.witnessed << " strongly real, "
                << report.certified_non_real << " certified non-real)\n";
      write_certificate(cert_path, classify_certificate(G, G.name(), report));
    } else if (*cmd_search) {
      auto G = build_group(spec, bounds);
      SearchOptions opt;
      opt.budget = budget;
      opt.seed = seed;
      opt.max_results = max_results;
      opt.systematic = systematic;
      if (!structure_path.empty())
        opt.hints.push_back(load_structure(G, structure_path));
      auto found = search_structures(G, opt);
      std::cout << "found " << found.size() << " structure(s)\n";
      for (const auto& s : found)
        std::cout << "  x1=" << G.render_element(s.p1.x)
                  << " y1=" << G.render_element(s.p1.y)
                  << " x2=" << G.render_element(s.p2.x)
                  << " y2=" << G.render_element(s.p2.y) << " type "
                  << type_string(structure_type(s)) << "\n";
      write_certificate(cert_path, search_certificate(G, G.name(), opt, found));
    } else if (*cmd_report) {
      auto G = build_group(spec, bounds);
      auto report = class_inversion_report(G, pick_backend(G, backend));
      std::cout << "classes of " << G.name() << " under " << report.backend_selector
                << ":\n";
      for (const auto& row : report.rows)
        std::cout << "  " << row.id.label << "  rep "
                  << G.render_element(row.representative) << "  order "
                  << row.order << "  size " << order_to_string(row.size) << "  "
                  << (row.invertible ? "invertible" : "not invertible") << "\n";
      for (const auto& a : report.backend.assumptions)
        std::cout << "assumes: " << a << "\n";
    } else if (*cmd_paper_an) {
      auto G = build_group("A" + std::to_string(an_degree), bounds);
      auto pp = paper_an_structure(an_degree);
      auto r = verify_structure(G, pp.x1, pp.y1, pp.x2, pp.y2);
      if (!r.ok) throw Error("the alternating construction failed to verify");
      std::cout << "verified: type " << type_string(*r.type) << "\n";
      auto sr = sr_check(G, *r.structure, pick_backend(G, "auto"));
      print_sr(G, sr);
      write_certificate(cert_path, reality_certificate(G, G.name(), *r.structure, sr));
    } else if (*cmd_m11a5) {
      auto G = paper_m11a5_group(bounds);
      auto pp = paper_m11a5_structure();
      auto r = verify_structure(G, pp.x1, pp.y1, pp.x2, pp.y2);
      if (!r.ok) throw Error("the degree-16 example failed to verify");
      std::cout << "verified: type " << type_string(*r.type) << "\n";
      auto sr = sr_check(G, *r.structure, pick_backend(G, "auto"));
      print_sr(G, sr);
      write_certificate(cert_path, reality_certificate(G, G.name(), *r.structure, sr));
    } else if (*cmd_macbeath) {
      bool ok = macbeath_check(load_bounds(bounds_dir));
      auto G = build_group("L2(8)", bounds);
      std::set<std::string> labels;
      for (const auto& g : G.elements())
        if (G.element_order(g) == 2) labels.insert(G.class_id(g).label);
      std::cout << "macbeath check: "
                << (ok ? "every generating pair inverts inside the group"
                       : "FAILED")
                << "\n"
                << "involution classes: " << labels.size() << "\n";
    } else if (*cmd_recheck) {
      std::ifstream in(cert_file);
      if (!in) throw ParseError("cannot read certificate '" + cert_file + "'", 0);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::exception& e) {
        throw ParseError("certificate '" + cert_file + "': " + e.what(), 0);
      }
      std::cout << recheck_certificate(doc, bounds) << "\n";
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapabilityError& e) {
    std::cerr << "capability: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return 4;
  }
}
