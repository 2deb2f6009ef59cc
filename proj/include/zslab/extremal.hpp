#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zslab/constants.hpp"
#include "zslab/sequence.hpp"
#include "zslab/weight_set.hpp"
#include "zslab/zerosum.hpp"

namespace zslab {

enum class EnumStrategy { kCanonical, kFull };

/// The zero-sum-free sequences of one fixed length, as canonical orbit
/// classes (kCanonical) or explicit tuples (kFull). Expanding a class means
/// replacing each term independently by every member of its orbit; this is
/// exact because A*(a*x) = A*x for a in the (group) weight set.
struct ExtremalFamily {
  std::uint32_t n = 0;
  std::string weights_label;
  ZeroSumMode mode = ZeroSumMode::kSubsequence;
  std::uint32_t length = 0;
  EnumStrategy strategy = EnumStrategy::kCanonical;
  bool complete = true;
  std::uint64_t nodes = 0;

  std::shared_ptr<const OrbitTable> orbits;            // canonical only
  std::vector<std::vector<std::uint32_t>> classes;     // canonical rep tuples
  std::vector<std::vector<std::uint32_t>> sequences;   // full tuples

  /// Number of explicit tuples (expanding classes when canonical).
  std::uint64_t total_count() const;
  /// Visits every explicit tuple. Buffer is reused between calls.
  void for_each_sequence(
      const std::function<void(const std::vector<std::uint32_t>&)>& fn) const;
};

/// All zero-sum-free sequences of the given length. An explicit `reduction`
/// table may replace the weight set's own orbits when callers need both sides
/// of a comparison reduced the same way; its orbits must be generated by a
/// subgroup of W for the reduction to be sound.
ExtremalFamily enumerate_extremal(const WeightSet& w, ZeroSumMode mode,
                                  std::uint32_t length, EnumStrategy strategy,
                                  const SearchBudget& budget = {},
                                  std::shared_ptr<const OrbitTable> reduction = nullptr);

/// len(s) == known_constant - 1 and s has no zero-sum of the mode.
bool is_extremal(const Sequence& s, const WeightSet& w, ZeroSumMode mode,
                 std::uint32_t known_constant);

// ---------------------------------------------------------------------------
// Structural forms from the characterization statements.

enum class FormId {
  kPairSplitS,     // permutation of (x1,x2): x1 in S(n), -x2 in U(n)\S(n)
  kPairSplitQp,    // same with Q_p on a prime modulus
  kExtl3Bullet1,   // perm of (x1,x2,x3): (x1,x2) mod n' D-extremal for S(n'),
                   // x3 a nonzero multiple of n' (n' = n/p')
  kExtl3Bullet2,   // perm: only x1 coprime to p'; (x2,x3) mod n' D-extremal
                   // for S(n') but not D-extremal for U(n')
  kExtl2Bullet1,   // perm of (x1,x2,x3): (x1,x2) mod q D-extremal for Q_q,
                   // x3 a nonzero multiple of q (n = p'q)
  kExtl2Bullet2,   // perm: only x1 coprime to p'; (x2,x3) mod q D-extremal Q_q
  kLext2Bullet1,   // positional: x1,x3,x5 nonzero multiples of q; (x2,x4)
                   // mod q C-extremal for Q_q
  kLext2Bullet2,   // positional: only x3 coprime to p'; (x1,x2) and (x4,x5)
                   // mod q C-extremal for Q_q
};

FormId parse_form_id(const std::string& id);
std::string form_id_name(FormId id);

struct FormParams {
  std::uint32_t n = 0;
  std::uint32_t p_prime = 0;  // p' where applicable
};

/// Literal implementation of one characterization bullet; permutation-closed
/// exactly where the statement says "permutation of". The sub-predicates
/// ("extremal for Q_q / S(n') / U(n')") are decided by direct search.
bool matches_form(const Sequence& s, FormId id, const FormParams& params);

// ---------------------------------------------------------------------------
// Theorem and lemma verification.

struct VerifyOptions {
  SearchBudget budget;
  std::uint32_t max_counterexamples = 10;
  bool exploratory = false;
  /// Families larger than this are compared at canonical-class level with
  /// sampled per-class audits instead of being fully expanded.
  std::uint64_t expand_limit = 4'000'000;
  std::uint64_t samples = 100'000;        // lemma sampling target
  std::uint64_t exhaustive_limit = 2'000'000;  // instance-space cutoff
  std::uint64_t seed = kDefaultSeed;
  std::uint32_t sequence_length = 3;      // instance length for lemma scans
};

enum class Verdict { kVerified, kCounterexample, kWithheld };

std::string verdict_name(Verdict v);

struct TheoremReport {
  std::string id;
  std::uint32_t n = 0;
  std::optional<std::uint32_t> p_prime;
  Verdict verdict = Verdict::kWithheld;
  std::vector<Sequence> counterexamples;  // truncated to max_counterexamples
  std::uint64_t counterexample_total = 0;
  std::vector<std::pair<std::string, std::uint64_t>> stats;
  std::optional<std::uint64_t> seed;  // present when sampling was used
  std::uint64_t nodes = 0;            // search nodes across all enumerations
  bool complete = true;
};

/// Registry ids: dexts, dexts2, cexts, dextl, extl3, extl2, cextl, lext2,
/// qp_remark.
const std::vector<std::string>& theorem_registry();

/// Registry ids: u2s, lifts, gs, gs2, s2l, u2l, gl2, gl, obs3, s2l3.
const std::vector<std::string>& lemma_registry();

TheoremReport verify_theorem(const std::string& theorem_id, std::uint32_t n,
                             std::optional<std::uint32_t> p_prime,
                             const VerifyOptions& options = {});

struct LemmaParams {
  std::uint32_t n = 0;
  std::optional<std::uint32_t> d;         // divisor (u2s, lifts)
  std::optional<std::uint32_t> p_prime;   // p' (s2l, u2l, gl2, gl, s2l3, obs3)
  std::optional<std::uint32_t> p;         // second prime (s2l, s2l3)
  std::optional<std::uint32_t> m1;        // coprime factor (obs3)
  std::optional<std::string> weights;     // A-kind (lifts, obs3)
};

TheoremReport verify_lemma(const std::string& lemma_id, const LemmaParams& params,
                           const VerifyOptions& options = {});

}  // namespace zslab
