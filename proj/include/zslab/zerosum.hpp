#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "zslab/residue_set.hpp"
#include "zslab/sequence.hpp"
#include "zslab/weight_set.hpp"

namespace zslab {

enum class ZeroSumMode { kSubsequence, kConsecutive };

inline char mode_letter(ZeroSumMode m) {
  return m == ZeroSumMode::kSubsequence ? 'D' : 'C';
}

/// An explicit weighted zero-sum: weights[k] * terms[indices[k]] sums to 0.
/// Indices are 0-based and strictly increasing; in consecutive mode they form
/// a contiguous block.
struct Witness {
  std::vector<std::uint32_t> indices;
  std::vector<std::uint32_t> weights;
  ZeroSumMode mode = ZeroSumMode::kSubsequence;
};

bool verify_witness(const Sequence& s, const WeightSet& w, const Witness& wit);

/// One weight set's translate sets A*x, cached per orbit when A is a group
/// (A*(a*x) = A*x for a in A), computed on demand otherwise.
class TranslateCache {
 public:
  struct Entry {
    ResidueSet set;
    RotatedBits rotated;
    explicit Entry(ResidueSet s) : set(std::move(s)), rotated(set) {}
  };

  TranslateCache(const WeightSet& w, std::shared_ptr<const OrbitTable> orbits);

  const Entry& translates(std::uint32_t x) const;
  const WeightSet& weights() const { return weights_; }
  const OrbitTable* orbits() const { return orbits_.get(); }

 private:
  ResidueSet build_for(std::uint32_t x) const;

  WeightSet weights_;
  std::shared_ptr<const OrbitTable> orbits_;
  std::vector<std::unique_ptr<Entry>> by_orbit_;  // group path, eager per rep
  mutable std::mutex mu_;                          // non-group fallback
  mutable std::unordered_map<std::uint32_t, std::unique_ptr<Entry>> by_term_;
};

/// Incremental zero-sum detector. States are plain values: they can be
/// copied, stacked for DFS backtracking, and moved across threads.
///
/// Subsequence mode: reach = all weighted sums of nonempty subsequences of
/// the prefix. Consecutive mode: reach = union over windows ending at the
/// last term of their weighted-sum sets (the sumset distributes over the
/// union, so one folded set suffices).
class ZeroSumScanner {
 public:
  struct State {
    ResidueSet reach;
    bool found = false;
  };

  ZeroSumScanner(const WeightSet& w, ZeroSumMode mode,
                 std::shared_ptr<const OrbitTable> orbits = nullptr);

  ZeroSumMode mode() const { return mode_; }
  const WeightSet& weights() const { return cache_.weights(); }
  const TranslateCache& translate_cache() const { return cache_; }

  State initial_state() const;
  /// Appends one term; O(1) sumset steps.
  State extended(const State& s, std::uint32_t term) const;
  /// In-place variant writing into `out` (reuses its storage).
  void extend_into(const State& s, std::uint32_t term, State& out) const;

  bool scan(const Sequence& s) const;

 private:
  ZeroSumMode mode_;
  TranslateCache cache_;
};

/// The translate set A*x = { a*x mod n : a in A }.
ResidueSet weighted_translates(const WeightSet& w, std::uint32_t x);

bool has_zero_subsequence(const Sequence& s, const WeightSet& w);
bool has_zero_consecutive(const Sequence& s, const WeightSet& w);
bool has_zero_sum(const Sequence& s, const WeightSet& w, ZeroSumMode mode);

/// Reconstructs an explicit witness (slower traceable pass); nullopt when the
/// sequence has no zero-sum of the given mode.
std::optional<Witness> find_zero_sum(const Sequence& s, const WeightSet& w,
                                     ZeroSumMode mode);

}  // namespace zslab
