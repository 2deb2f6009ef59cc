#include "zslab/sequence.hpp"

#include <charconv>
#include <stdexcept>

namespace zslab {

Sequence parse_sequence(const std::string& text, std::uint32_t n) {
  Sequence s;
  s.n = n;
  if (text.empty()) return s;
  const char* p = text.data();
  const char* end = p + text.size();
  while (p < end) {
    std::uint32_t v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || (next < end && *next != ',')) {
      throw std::invalid_argument("malformed sequence literal: " + text);
    }
    if (v >= n) {
      throw std::invalid_argument("sequence term " + std::to_string(v) +
                                  " out of range for modulus " +
                                  std::to_string(n));
    }
    s.terms.push_back(v);
    p = next < end ? next + 1 : next;
    if (next < end && next + 1 == end) {
      throw std::invalid_argument("malformed sequence literal: " + text);
    }
  }
  return s;
}

std::string to_string(const Sequence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.terms[i]);
  }
  return out;
}

Sequence project_sequence(const Sequence& s, const ProjectionMap& pm) {
  if (s.n != pm.source()) {
    throw std::invalid_argument("sequence modulus does not match projection");
  }
  Sequence out;
  out.n = pm.target();
  out.terms.reserve(s.terms.size());
  for (auto x : s.terms) out.terms.push_back(pm(x));
  return out;
}

}  // namespace zslab
