#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "zslab/sequence.hpp"
#include "zslab/weight_set.hpp"
#include "zslab/zerosum.hpp"

namespace zslab {

inline constexpr std::uint64_t kDefaultMaxNodes = 2'000'000'000;
inline constexpr std::uint64_t kDefaultSeed = 0x5EED5EED;

struct SearchBudget {
  std::uint64_t max_nodes = kDefaultMaxNodes;
  double max_seconds = 0;  // 0 = no wall-clock limit
  std::optional<std::uint32_t> depth_cap;  // default 2^omega + 2
};

/// Width of the root-branch thread pool: explicit value, else ZSLAB_THREADS,
/// else the hardware concurrency.
unsigned resolve_threads(unsigned requested);

struct ConstantResult {
  ZeroSumMode mode;
  /// The constant when exhaustive; otherwise the best certified lower bound.
  std::uint32_t value = 0;
  bool exhaustive = false;
  /// A zero-sum-free sequence of length value-1; absent when value == 1.
  std::optional<Sequence> certificate;
  std::uint64_t nodes = 0;
  double wall_seconds = 0;
};

/// Smallest k such that every length-k sequence in Z_n has an A-weighted
/// zero-sum of the given mode, by iterative-deepening exhaustive search over
/// canonical sequences (orbit representatives when W is a group; multiset
/// order for the subsequence mode; reversal reduction for windows).
ConstantResult zero_sum_constant(const WeightSet& w, ZeroSumMode mode,
                                 const SearchBudget& budget = {},
                                 unsigned threads = 0);

inline ConstantResult davenport_constant(const WeightSet& w,
                                         const SearchBudget& budget = {},
                                         unsigned threads = 0) {
  return zero_sum_constant(w, ZeroSumMode::kSubsequence, budget, threads);
}

inline ConstantResult consecutive_constant(const WeightSet& w,
                                           const SearchBudget& budget = {},
                                           unsigned threads = 0) {
  return zero_sum_constant(w, ZeroSumMode::kConsecutive, budget, threads);
}

/// Closed-form values where a theorem covers (n, W); "not covered" otherwise.
struct Prediction {
  std::optional<std::uint32_t> d;
  std::optional<std::uint32_t> c;
  std::string hypothesis;  // which hypothesis applied, or why not covered
  bool covered() const { return d.has_value() || c.has_value(); }
};

Prediction predicted_constants(const WeightSet& w);

/// True iff s has no zero-sum of the mode; certifies constant >= len(s)+1.
bool certify_lower_bound(const Sequence& s, const WeightSet& w, ZeroSumMode mode);

/// A window-zero-sum-free sequence of length 2^omega(n)-1 for odd squarefree
/// n, built by the doubling construction (B_1 = (1),
/// B_{k+1} = (p_{k+1}*B_k, 1, p_{k+1}*B_k)). Every window containing the
/// middle unit is nonzero mod p_{k+1}; the flanks reduce to the previous
/// level. Valid as a lower-bound certificate for any weight set of units.
Sequence window_free_certificate(const Modulus& n);

}  // namespace zslab
