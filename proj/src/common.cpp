#include "bvl/common.hpp"

#include <algorithm>

namespace bvl {

std::string order_to_string(GroupOrder n) {
  if (n == 0) return "0";
  std::string s;
  while (n > 0) {
    s += static_cast<char>('0' + static_cast<unsigned>(n % 10));
    n /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

GroupOrder order_from_string(const std::string& s) {
  if (s.empty()) throw DomainError("empty order string");
  GroupOrder n = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw DomainError("non-digit in order string: " + s);
    n = n * 10 + static_cast<GroupOrder>(c - '0');
  }
  return n;
}

const Bounds& Bounds::defaults() {
  static const Bounds b;
  return b;
}

}  // namespace bvl
