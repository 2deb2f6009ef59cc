#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zslab/modulus.hpp"

namespace zslab {

/// An ordered tuple of residues mod n. Order matters: the consecutive-window
/// questions are not permutation invariant.
struct Sequence {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> terms;

  std::size_t size() const { return terms.size(); }
  bool empty() const { return terms.empty(); }

  friend bool operator==(const Sequence&, const Sequence&) = default;
  friend auto operator<=>(const Sequence&, const Sequence&) = default;
};

/// Parses "1,4,12" into a Sequence, validating every term against n.
Sequence parse_sequence(const std::string& text, std::uint32_t n);

/// "1,4,12" (empty string for the empty sequence).
std::string to_string(const Sequence& s);

/// Termwise natural map; preserves length and order.
Sequence project_sequence(const Sequence& s, const ProjectionMap& pm);

}  // namespace zslab
