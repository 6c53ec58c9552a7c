// Shared error types, bounds and the wide group-order integer.
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bvl {

// Orders of symmetric groups up to degree 32 exceed 64 bits.
using GroupOrder = unsigned __int128;

std::string order_to_string(GroupOrder n);
GroupOrder order_from_string(const std::string& s);

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad arguments: degree mismatches, malformed elements, wrong backend.
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A configured bound was exceeded or no strategy applies; never silent.
struct CapabilityError : Error {
  explicit CapabilityError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

// Tunable limits; defaults cover every group this tool targets.
struct Bounds {
  std::size_t orbit_limit = std::size_t{1} << 22;   // conjugation-orbit BFS elements
  std::size_t centralizer_limit = 1u << 20;         // ambient centralizer enumeration
  std::size_t enumeration_limit = 1000000;          // group element enumeration
  std::size_t exhaustive_aut_limit = 2000;          // |G| cap for brute-force Aut
  std::size_t classify_order_limit = 10000;         // |G| cap for full classification
  unsigned max_symmetric_degree = 32;               // cap for A(n)/S(n) atoms

  static const Bounds& defaults();
};

}  // namespace bvl
