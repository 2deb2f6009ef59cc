#include "zslab/extremal.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <stdexcept>
#include <set>
#include <unordered_set>

namespace zslab {

namespace {

using Clock = std::chrono::steady_clock;

bool packable(std::uint32_t n, std::uint32_t length) {
  return n <= 4095 && length <= 5 && length >= 1;
}

std::uint64_t pack_tuple(const std::vector<std::uint32_t>& t) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < t.size(); ++i) key |= std::uint64_t(t[i]) << (12 * i);
  return key;
}

std::vector<std::uint32_t> unpack_tuple(std::uint64_t key, std::uint32_t length) {
  std::vector<std::uint32_t> t(length);
  for (std::uint32_t i = 0; i < length; ++i) t[i] = (key >> (12 * i)) & 0xFFF;
  return t;
}

void sort_unique(std::vector<std::uint64_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::uint64_t ExtremalFamily::total_count() const {
  if (strategy == EnumStrategy::kFull) return sequences.size();
  std::uint64_t total = 0;
  for (const auto& cls : classes) {
    std::uint64_t sz = 1;
    for (auto r : cls) sz *= orbits->orbit_members(orbits->orbit_index(r)).size();
    total += sz;
  }
  return total;
}

void ExtremalFamily::for_each_sequence(
    const std::function<void(const std::vector<std::uint32_t>&)>& fn) const {
  if (strategy == EnumStrategy::kFull) {
    for (const auto& s : sequences) fn(s);
    return;
  }
  std::vector<std::uint32_t> buf(length);
  for (const auto& cls : classes) {
    // Odometer over the orbit members of each position.
    std::vector<const std::vector<std::uint32_t>*> orbs(length);
    std::vector<std::size_t> pos(length, 0);
    for (std::uint32_t i = 0; i < length; ++i) {
      orbs[i] = &orbits->orbit_members(orbits->orbit_index(cls[i]));
      buf[i] = (*orbs[i])[0];
    }
    for (;;) {
      fn(buf);
      std::uint32_t i = 0;
      for (; i < length; ++i) {
        if (++pos[i] < orbs[i]->size()) {
          buf[i] = (*orbs[i])[pos[i]];
          break;
        }
        pos[i] = 0;
        buf[i] = (*orbs[i])[0];
      }
      if (i == length) break;
    }
  }
}

ExtremalFamily enumerate_extremal(const WeightSet& w, ZeroSumMode mode,
                                  std::uint32_t length, EnumStrategy strategy,
                                  const SearchBudget& budget,
                                  std::shared_ptr<const OrbitTable> reduction) {
  ExtremalFamily fam;
  fam.n = w.n();
  fam.weights_label = w.label();
  fam.mode = mode;
  fam.length = length;
  fam.strategy = strategy;

  std::vector<std::uint32_t> terms;
  if (strategy == EnumStrategy::kCanonical) {
    if (!reduction) {
      if (!w.is_group()) {
        throw std::invalid_argument(
            "orbit canonicalization requires a group weight set");
      }
      reduction = std::make_shared<const OrbitTable>(OrbitTable::build(w));
    }
    fam.orbits = reduction;
    for (auto r : reduction->reps()) {
      if (r != 0) terms.push_back(r);
    }
  } else {
    for (std::uint32_t x = 1; x < w.n(); ++x) terms.push_back(x);
  }

  ZeroSumScanner scanner(w, mode, w.is_group() ? fam.orbits : nullptr);
  std::vector<ZeroSumScanner::State> states;
  states.reserve(length + 1);
  for (std::uint32_t i = 0; i <= length; ++i) states.push_back(scanner.initial_state());

  std::optional<Clock::time_point> deadline;
  if (budget.max_seconds > 0) {
    deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(budget.max_seconds));
  }

  std::vector<std::uint32_t> prefix;
  prefix.reserve(length);
  auto& out = strategy == EnumStrategy::kCanonical ? fam.classes : fam.sequences;
  const std::uint64_t deadline_stride = w.n() > 16384 ? 1 : 1024;

  // Plain recursive DFS with prefix pruning; zero-sum-free is prefix-closed.
  std::function<void(std::uint32_t)> dfs = [&](std::uint32_t level) {
    if (!fam.complete) return;
    if (level == length) {
      out.push_back(prefix);
      return;
    }
    for (auto x : terms) {
      if (fam.nodes >= budget.max_nodes ||
          (deadline && (fam.nodes % deadline_stride) == 0 &&
           Clock::now() > *deadline)) {
        fam.complete = false;
        return;
      }
      ++fam.nodes;
      scanner.extend_into(states[level], x, states[level + 1]);
      if (states[level + 1].found) continue;
      prefix.push_back(x);
      dfs(level + 1);
      prefix.pop_back();
      if (!fam.complete) return;
    }
  };
  if (length > 0) dfs(0);
  return fam;
}

bool is_extremal(const Sequence& s, const WeightSet& w, ZeroSumMode mode,
                 std::uint32_t known_constant) {
  if (known_constant == 0) {
    throw std::invalid_argument("is_extremal requires a known constant");
  }
  if (s.terms.size() + 1 != known_constant) return false;
  return !has_zero_sum(s, w, mode);
}

// ---------------------------------------------------------------------------
// Sub-families used by the structural forms, decided by direct search.

namespace {

struct SubFamily {
  std::uint32_t modulus = 0;
  std::uint32_t constant = 0;              // the relevant zero-sum constant
  std::vector<std::uint64_t> pairs;        // packed extremal pairs, sorted
  bool contains(std::uint32_t a, std::uint32_t b) const {
    const std::uint64_t key = pack_tuple({a, b});
    return std::binary_search(pairs.begin(), pairs.end(), key);
  }
};

// Extremal pairs for a weight set on a small modulus (full scan).
SubFamily extremal_pairs(const WeightSet& w, ZeroSumMode mode) {
  SubFamily sub;
  sub.modulus = w.n();
  auto c = zero_sum_constant(w, mode);
  if (!c.exhaustive) {
    throw std::runtime_error("sub-search for " + w.label() + " mod " +
                             std::to_string(w.n()) + " did not complete");
  }
  sub.constant = c.value;
  if (c.value != 3) return sub;  // extremal pairs only exist when constant is 3
  auto fam = enumerate_extremal(w, mode, 2, EnumStrategy::kFull);
  sub.pairs.reserve(fam.sequences.size());
  for (const auto& t : fam.sequences) sub.pairs.push_back(pack_tuple(t));
  sort_unique(sub.pairs);
  return sub;
}

// The unique prime divisor p of a two-prime n besides p'.
std::uint32_t other_prime(const Modulus& n, std::uint32_t p_prime) {
  for (const auto& f : n.factors()) {
    if (f.prime != p_prime) return f.prime;
  }
  throw std::invalid_argument("modulus has no second prime divisor");
}

std::uint32_t crt_lift_zero(std::uint32_t n, std::uint32_t p_prime,
                            std::uint32_t q, std::uint32_t y) {
  // x = 0 mod p', x = y mod q
  for (std::uint32_t x = 0; x < n; x += p_prime) {
    if (x % q == y) return x;
  }
  throw std::logic_error("CRT lift failed");
}

}  // namespace

FormId parse_form_id(const std::string& id) {
  if (id == "pair_split_S") return FormId::kPairSplitS;
  if (id == "pair_split_Qp") return FormId::kPairSplitQp;
  if (id == "extl3_bullet1") return FormId::kExtl3Bullet1;
  if (id == "extl3_bullet2") return FormId::kExtl3Bullet2;
  if (id == "extl2_bullet1") return FormId::kExtl2Bullet1;
  if (id == "extl2_bullet2") return FormId::kExtl2Bullet2;
  if (id == "lext2_bullet1") return FormId::kLext2Bullet1;
  if (id == "lext2_bullet2") return FormId::kLext2Bullet2;
  throw std::invalid_argument("unknown form id: " + id);
}

std::string form_id_name(FormId id) {
  switch (id) {
    case FormId::kPairSplitS: return "pair_split_S";
    case FormId::kPairSplitQp: return "pair_split_Qp";
    case FormId::kExtl3Bullet1: return "extl3_bullet1";
    case FormId::kExtl3Bullet2: return "extl3_bullet2";
    case FormId::kExtl2Bullet1: return "extl2_bullet1";
    case FormId::kExtl2Bullet2: return "extl2_bullet2";
    case FormId::kLext2Bullet1: return "lext2_bullet1";
    case FormId::kLext2Bullet2: return "lext2_bullet2";
  }
  return "?";
}

namespace {

// Literal positional checks for each bullet, applied to one arrangement.

bool literal_pair_split(const std::vector<std::uint32_t>& t, const WeightSet& w) {
  const Modulus& m = w.modulus();
  const std::uint32_t neg2 = m.neg(t[1]);
  return w.contains(t[0]) && std::gcd(neg2, m.value()) == 1 && !w.contains(neg2);
}

bool literal_extl3_b1(const std::vector<std::uint32_t>& t, std::uint32_t n,
                      std::uint32_t p_prime, const SubFamily& dext_s_nprime) {
  const std::uint32_t n_prime = n / p_prime;
  if (t[2] == 0 || t[2] % n_prime != 0) return false;
  return dext_s_nprime.contains(t[0] % n_prime, t[1] % n_prime);
}

bool literal_extl3_b2(const std::vector<std::uint32_t>& t, std::uint32_t n,
                      std::uint32_t p_prime, const SubFamily& dext_s_nprime,
                      const SubFamily& dext_u_nprime) {
  const std::uint32_t n_prime = n / p_prime;
  if (t[0] % p_prime == 0) return false;
  if (t[1] % p_prime != 0 || t[2] % p_prime != 0) return false;
  const std::uint32_t y1 = t[1] % n_prime, y2 = t[2] % n_prime;
  return dext_s_nprime.contains(y1, y2) && !dext_u_nprime.contains(y1, y2);
}

bool literal_extl2_b1(const std::vector<std::uint32_t>& t, std::uint32_t q,
                      const SubFamily& dext_q) {
  if (t[2] == 0 || t[2] % q != 0) return false;
  return dext_q.contains(t[0] % q, t[1] % q);
}

bool literal_extl2_b2(const std::vector<std::uint32_t>& t, std::uint32_t p_prime,
                      std::uint32_t q, const SubFamily& dext_q) {
  if (t[0] % p_prime == 0) return false;
  if (t[1] % p_prime != 0 || t[2] % p_prime != 0) return false;
  return dext_q.contains(t[1] % q, t[2] % q);
}

bool literal_lext2_b1(const std::vector<std::uint32_t>& t, std::uint32_t q,
                      const SubFamily& cext_q) {
  for (int i : {0, 2, 4}) {
    if (t[i] == 0 || t[i] % q != 0) return false;
  }
  return cext_q.contains(t[1] % q, t[3] % q);
}

bool literal_lext2_b2(const std::vector<std::uint32_t>& t, std::uint32_t p_prime,
                      std::uint32_t q, const SubFamily& cext_q) {
  if (t[2] % p_prime == 0) return false;
  for (int i : {0, 1, 3, 4}) {
    if (t[i] % p_prime != 0) return false;
  }
  return cext_q.contains(t[0] % q, t[1] % q) && cext_q.contains(t[3] % q, t[4] % q);
}

template <typename Pred>
bool any_permutation(const std::vector<std::uint32_t>& terms, Pred&& pred) {
  std::vector<std::size_t> idx(terms.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end());
  std::vector<std::uint32_t> t(terms.size());
  do {
    for (std::size_t i = 0; i < idx.size(); ++i) t[i] = terms[idx[i]];
    if (pred(t)) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

}  // namespace

bool matches_form(const Sequence& s, FormId id, const FormParams& params) {
  const auto mod = Modulus::factorize(params.n);
  switch (id) {
    case FormId::kPairSplitS: {
      if (s.terms.size() != 2) return false;
      auto w = s_weights(mod);
      return any_permutation(s.terms,
                             [&](const auto& t) { return literal_pair_split(t, w); });
    }
    case FormId::kPairSplitQp: {
      if (s.terms.size() != 2) return false;
      if (!mod.is_prime()) {
        throw std::invalid_argument("pair_split_Qp requires a prime modulus");
      }
      auto w = unit_squares(mod);
      return any_permutation(s.terms,
                             [&](const auto& t) { return literal_pair_split(t, w); });
    }
    case FormId::kExtl3Bullet1:
    case FormId::kExtl3Bullet2: {
      if (s.terms.size() != 3) return false;
      if (mod.omega() != 3 || !mod.squarefree()) {
        throw std::invalid_argument("extl3 forms require squarefree n with omega 3");
      }
      const std::uint32_t n_prime = params.n / params.p_prime;
      const auto sub_mod = Modulus::factorize(n_prime);
      auto dext_s = extremal_pairs(s_weights(sub_mod), ZeroSumMode::kSubsequence);
      if (id == FormId::kExtl3Bullet1) {
        return any_permutation(s.terms, [&](const auto& t) {
          return literal_extl3_b1(t, params.n, params.p_prime, dext_s);
        });
      }
      auto dext_u = extremal_pairs(units(sub_mod), ZeroSumMode::kSubsequence);
      return any_permutation(s.terms, [&](const auto& t) {
        return literal_extl3_b2(t, params.n, params.p_prime, dext_s, dext_u);
      });
    }
    case FormId::kExtl2Bullet1:
    case FormId::kExtl2Bullet2: {
      if (s.terms.size() != 3) return false;
      if (mod.omega() != 2 || !mod.squarefree()) {
        throw std::invalid_argument("extl2 forms require n = p'q");
      }
      const std::uint32_t q = other_prime(mod, params.p_prime);
      auto dext_q =
          extremal_pairs(unit_squares(Modulus::factorize(q)), ZeroSumMode::kSubsequence);
      if (id == FormId::kExtl2Bullet1) {
        return any_permutation(s.terms, [&](const auto& t) {
          return literal_extl2_b1(t, q, dext_q);
        });
      }
      return any_permutation(s.terms, [&](const auto& t) {
        return literal_extl2_b2(t, params.p_prime, q, dext_q);
      });
    }
    case FormId::kLext2Bullet1:
    case FormId::kLext2Bullet2: {
      if (s.terms.size() != 5) return false;
      if (mod.omega() != 2 || !mod.squarefree()) {
        throw std::invalid_argument("lext2 forms require n = p'q");
      }
      const std::uint32_t q = other_prime(mod, params.p_prime);
      auto cext_q =
          extremal_pairs(unit_squares(Modulus::factorize(q)), ZeroSumMode::kConsecutive);
      // No "permutation of" in this statement: positions are fixed.
      if (id == FormId::kLext2Bullet1) {
        return literal_lext2_b1(s.terms, q, cext_q);
      }
      return literal_lext2_b2(s.terms, params.p_prime, q, cext_q);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Theorem verification.

const std::vector<std::string>& theorem_registry() {
  static const std::vector<std::string> ids = {
      "dexts", "dexts2", "cexts", "dextl", "extl3", "extl2", "cextl", "lext2",
      "qp_remark"};
  return ids;
}

const std::vector<std::string>& lemma_registry() {
  static const std::vector<std::string> ids = {"u2s",  "lifts", "gs",   "gs2",
                                               "s2l",  "u2l",   "gl2",  "gl",
                                               "obs3", "s2l3"};
  return ids;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kVerified: return "verified";
    case Verdict::kCounterexample: return "counterexample";
    case Verdict::kWithheld: return "withheld";
  }
  return "?";
}

namespace {

void check_hyp(bool ok, const std::string& msg, bool exploratory) {
  if (!ok && !exploratory) {
    throw std::invalid_argument("hypothesis violation: " + msg +
                                " (--exploratory overrides)");
  }
}

// Generates every tuple of one structural form family. `emit` receives each
// literal arrangement (permutations included where the statement permutes).
class FormGenerator {
 public:
  FormGenerator(std::uint32_t n, std::uint32_t p_prime) : n_(n), p_prime_(p_prime) {}

  void extl2_forms(const SubFamily& dext_q,
                   const std::function<void(const std::vector<std::uint32_t>&)>& emit) const {
    const std::uint32_t q = n_ / p_prime_;
    for (auto key : dext_q.pairs) {
      const auto y = unpack_tuple(key, 2);
      for (std::uint32_t x1 = y[0]; x1 < n_; x1 += q) {
        for (std::uint32_t x2 = y[1]; x2 < n_; x2 += q) {
          for (std::uint32_t k = 1; k < p_prime_; ++k) {
            emit_permutations({x1, x2, k * q}, emit);
          }
        }
      }
      const std::uint32_t x2 = crt_lift_zero(n_, p_prime_, q, y[0]);
      const std::uint32_t x3 = crt_lift_zero(n_, p_prime_, q, y[1]);
      for (std::uint32_t x1 = 1; x1 < n_; ++x1) {
        if (x1 % p_prime_ == 0) continue;
        emit_permutations({x1, x2, x3}, emit);
      }
    }
  }

  void extl3_forms(const SubFamily& dext_s, const SubFamily& dext_u,
                   const std::function<void(const std::vector<std::uint32_t>&)>& emit) const {
    const std::uint32_t n_prime = n_ / p_prime_;
    for (auto key : dext_s.pairs) {
      const auto y = unpack_tuple(key, 2);
      for (std::uint32_t x1 = y[0]; x1 < n_; x1 += n_prime) {
        for (std::uint32_t x2 = y[1]; x2 < n_; x2 += n_prime) {
          for (std::uint32_t k = 1; k < p_prime_; ++k) {
            emit_permutations({x1, x2, k * n_prime}, emit);
          }
        }
      }
      if (dext_u.contains(y[0], y[1])) continue;
      const std::uint32_t x2 = crt_lift_zero(n_, p_prime_, n_prime, y[0]);
      const std::uint32_t x3 = crt_lift_zero(n_, p_prime_, n_prime, y[1]);
      for (std::uint32_t x1 = 1; x1 < n_; ++x1) {
        if (x1 % p_prime_ == 0) continue;
        emit_permutations({x1, x2, x3}, emit);
      }
    }
  }

  void lext2_forms(const SubFamily& cext_q,
                   const std::function<void(const std::vector<std::uint32_t>&)>& emit) const {
    const std::uint32_t q = n_ / p_prime_;
    std::vector<std::uint32_t> t(5);
    std::vector<std::uint32_t> mult_q;
    for (std::uint32_t k = 1; k < p_prime_; ++k) mult_q.push_back(k * q);
    for (auto key : cext_q.pairs) {
      const auto y = unpack_tuple(key, 2);
      for (std::uint32_t x2 = y[0]; x2 < n_; x2 += q) {
        for (std::uint32_t x4 = y[1]; x4 < n_; x4 += q) {
          for (auto x1 : mult_q) {
            for (auto x3 : mult_q) {
              for (auto x5 : mult_q) {
                t = {x1, x2, x3, x4, x5};
                emit(t);
              }
            }
          }
        }
      }
    }
    for (auto key1 : cext_q.pairs) {
      const auto y = unpack_tuple(key1, 2);
      const std::uint32_t x1 = crt_lift_zero(n_, p_prime_, q, y[0]);
      const std::uint32_t x2 = crt_lift_zero(n_, p_prime_, q, y[1]);
      for (auto key2 : cext_q.pairs) {
        const auto z = unpack_tuple(key2, 2);
        const std::uint32_t x4 = crt_lift_zero(n_, p_prime_, q, z[0]);
        const std::uint32_t x5 = crt_lift_zero(n_, p_prime_, q, z[1]);
        for (std::uint32_t x3 = 1; x3 < n_; ++x3) {
          if (x3 % p_prime_ == 0) continue;
          t = {x1, x2, x3, x4, x5};
          emit(t);
        }
      }
    }
  }

  void pair_split_forms(const WeightSet& w,
                        const std::function<void(const std::vector<std::uint32_t>&)>& emit) const {
    const Modulus& m = w.modulus();
    std::vector<std::uint32_t> nonsplit;  // x2 with -x2 a unit outside W
    for (std::uint32_t x2 = 1; x2 < n_; ++x2) {
      const std::uint32_t neg = m.neg(x2);
      if (std::gcd(neg, n_) == 1 && !w.contains(neg)) nonsplit.push_back(x2);
    }
    std::vector<std::uint32_t> t(2);
    w.members().for_each([&](std::uint32_t x1) {
      for (auto x2 : nonsplit) {
        t = {x1, x2};
        emit(t);
        t = {x2, x1};
        emit(t);
      }
    });
  }

 private:
  void emit_permutations(
      std::vector<std::uint32_t> t,
      const std::function<void(const std::vector<std::uint32_t>&)>& emit) const {
    std::sort(t.begin(), t.end());
    do {
      emit(t);
    } while (std::next_permutation(t.begin(), t.end()));
  }

  std::uint32_t n_;
  std::uint32_t p_prime_;
};

struct PackedFamily {
  std::vector<std::uint64_t> keys;  // sorted, unique
};

// Expands an enumerated family into packed tuples; nullopt above the limit.
std::optional<PackedFamily> expand_family(const ExtremalFamily& fam,
                                          std::uint64_t limit) {
  if (!packable(fam.n, fam.length)) return std::nullopt;
  if (fam.total_count() > limit) return std::nullopt;
  PackedFamily out;
  out.keys.reserve(fam.total_count());
  fam.for_each_sequence([&](const std::vector<std::uint32_t>& t) {
    out.keys.push_back(pack_tuple(t));
  });
  sort_unique(out.keys);
  return out;
}

struct SetComparison {
  std::uint64_t lhs_total = 0, rhs_total = 0, lhs_only = 0, rhs_only = 0;
  std::vector<std::vector<std::uint32_t>> sample;  // up to max_counterexamples
};

SetComparison compare_packed(const std::vector<std::uint64_t>& lhs,
                             const std::vector<std::uint64_t>& rhs,
                             std::uint32_t max_samples, std::uint32_t length) {
  SetComparison cmp;
  cmp.lhs_total = lhs.size();
  cmp.rhs_total = rhs.size();
  auto sample = [&](std::uint64_t key) {
    if (cmp.sample.size() < max_samples) cmp.sample.push_back(unpack_tuple(key, length));
  };
  std::size_t i = 0, j = 0;
  while (i < lhs.size() || j < rhs.size()) {
    if (j >= rhs.size() || (i < lhs.size() && lhs[i] < rhs[j])) {
      ++cmp.lhs_only;
      sample(lhs[i]);
      ++i;
    } else if (i >= lhs.size() || rhs[j] < lhs[i]) {
      ++cmp.rhs_only;
      sample(rhs[j]);
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return cmp;
}

// Same walk over sorted tuple vectors; used by the class-level comparison
// where tuples can be longer than the packed encoding allows.
SetComparison compare_sorted_tuples(const std::vector<std::vector<std::uint32_t>>& lhs,
                                    const std::vector<std::vector<std::uint32_t>>& rhs,
                                    std::uint32_t max_samples) {
  SetComparison cmp;
  cmp.lhs_total = lhs.size();
  cmp.rhs_total = rhs.size();
  auto sample = [&](const std::vector<std::uint32_t>& t) {
    if (cmp.sample.size() < max_samples) cmp.sample.push_back(t);
  };
  std::size_t i = 0, j = 0;
  while (i < lhs.size() || j < rhs.size()) {
    if (j >= rhs.size() || (i < lhs.size() && lhs[i] < rhs[j])) {
      ++cmp.lhs_only;
      sample(lhs[i]);
      ++i;
    } else if (i >= lhs.size() || rhs[j] < lhs[i]) {
      ++cmp.rhs_only;
      sample(rhs[j]);
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return cmp;
}

}  // namespace

namespace {

// Shared state for one verify_theorem run.
struct TheoremCheck {
  TheoremReport report;
  VerifyOptions options;
  Modulus mod = Modulus::factorize(3);

  void add_stat(const std::string& k, std::uint64_t v) {
    report.stats.emplace_back(k, v);
  }

  void finish_equality(const SetComparison& cmp) {
    add_stat("lhs_total", cmp.lhs_total);
    add_stat("rhs_total", cmp.rhs_total);
    add_stat("lhs_only", cmp.lhs_only);
    add_stat("rhs_only", cmp.rhs_only);
    report.counterexample_total = cmp.lhs_only + cmp.rhs_only;
    for (const auto& t : cmp.sample) {
      if (report.counterexamples.size() >= options.max_counterexamples) break;
      report.counterexamples.push_back(Sequence{mod.value(), t});
    }
    report.verdict = report.counterexample_total == 0 ? Verdict::kVerified
                                                      : Verdict::kCounterexample;
  }

  void withheld(const std::string& why) {
    report.verdict = Verdict::kWithheld;
    report.complete = false;
    add_stat("withheld:" + why, 1);
  }
};

// Computes an exhaustive constant or marks the report withheld.
std::optional<std::uint32_t> need_constant(TheoremCheck& chk, const WeightSet& w,
                                           ZeroSumMode mode) {
  auto res = zero_sum_constant(w, mode, chk.options.budget);
  chk.report.nodes += res.nodes;
  if (!res.exhaustive) {
    chk.withheld("constant_search_incomplete");
    return std::nullopt;
  }
  return res.value;
}

// LHS extremal family (canonical), RHS = optional U-family at the same
// length (canonical over the same table) plus a form family generator.
void run_family_equality(
    TheoremCheck& chk, const WeightSet& lhs_w, ZeroSumMode mode,
    bool include_u_family,
    const std::function<void(const std::function<void(const std::vector<std::uint32_t>&)>&)>&
        form_generator,
    bool check_perm_diagnostic = false) {
  auto lhs_constant = need_constant(chk, lhs_w, mode);
  if (!lhs_constant) return;
  const std::uint32_t length = *lhs_constant - 1;
  if (length == 0) {
    // Degenerate: constant 1 means no extremal sequences on either side.
    chk.add_stat("lhs_total", 0);
    chk.add_stat("rhs_total", 0);
    chk.report.verdict = Verdict::kVerified;
    return;
  }

  auto table = std::make_shared<const OrbitTable>(OrbitTable::build(lhs_w));
  auto lhs_fam = enumerate_extremal(lhs_w, mode, length, EnumStrategy::kCanonical,
                                    chk.options.budget, table);
  chk.report.nodes += lhs_fam.nodes;
  if (!lhs_fam.complete) {
    chk.withheld("lhs_enumeration_incomplete");
    return;
  }

  std::optional<ExtremalFamily> u_fam;
  if (include_u_family) {
    auto u_w = units(chk.mod);
    auto u_constant = need_constant(chk, u_w, mode);
    if (!u_constant) return;
    if (*u_constant != *lhs_constant) {
      chk.report.verdict = Verdict::kCounterexample;
      chk.add_stat("constant_mismatch_lhs", *lhs_constant);
      chk.add_stat("constant_mismatch_u", *u_constant);
      return;
    }
    u_fam = enumerate_extremal(u_w, mode, length, EnumStrategy::kCanonical,
                               chk.options.budget, table);
    chk.report.nodes += u_fam->nodes;
    if (!u_fam->complete) {
      chk.withheld("u_enumeration_incomplete");
      return;
    }
  }

  const std::uint64_t lhs_count = lhs_fam.total_count();
  const std::uint64_t u_count = u_fam ? u_fam->total_count() : 0;
  const bool expandable = packable(chk.mod.value(), length) &&
                          lhs_count <= chk.options.expand_limit &&
                          u_count <= chk.options.expand_limit;

  if (expandable) {
    auto lhs = expand_family(lhs_fam, chk.options.expand_limit);
    std::vector<std::uint64_t> rhs;
    if (u_fam) {
      auto u = expand_family(*u_fam, chk.options.expand_limit);
      rhs = std::move(u->keys);
    }
    std::uint64_t form_raw = 0;
    form_generator([&](const std::vector<std::uint32_t>& t) {
      rhs.push_back(pack_tuple(t));
      ++form_raw;
    });
    sort_unique(rhs);
    chk.add_stat("u_family", u_count);
    chk.add_stat("form_tuples", form_raw);
    auto cmp = compare_packed(lhs->keys, rhs, chk.options.max_counterexamples, length);
    chk.finish_equality(cmp);

    if (check_perm_diagnostic && chk.report.verdict == Verdict::kVerified) {
      // Would the permutation-closed reading also hold? Equivalent to the
      // form family being closed under permutations.
      std::unordered_set<std::uint64_t> all(rhs.begin(), rhs.end());
      bool closed = true;
      std::vector<std::uint32_t> t;
      for (auto key : rhs) {
        t = unpack_tuple(key, length);
        std::sort(t.begin(), t.end());
        do {
          if (!all.count(pack_tuple(t))) {
            closed = false;
            break;
          }
        } while (std::next_permutation(t.begin(), t.end()));
        if (!closed) break;
      }
      chk.add_stat("permutation_closed_reading_holds", closed ? 1 : 0);
    }
    return;
  }

  // Class-level fallback with sampled audits. Classes are plain tuples of
  // representatives, compared lexicographically (no packing limits).
  auto lhs_classes = lhs_fam.classes;
  std::sort(lhs_classes.begin(), lhs_classes.end());
  std::vector<std::vector<std::uint32_t>> rhs_classes =
      u_fam ? u_fam->classes : std::vector<std::vector<std::uint32_t>>{};
  {
    std::vector<std::uint32_t> c(length);
    std::mt19937_64 rng(chk.options.seed);
    std::vector<std::vector<std::uint32_t>> audit_pool;
    std::set<std::vector<std::uint32_t>> form_classes;  // distinct classes are few
    form_generator([&](const std::vector<std::uint32_t>& t) {
      for (std::size_t i = 0; i < t.size(); ++i) c[i] = table->canonical(t[i]);
      form_classes.insert(c);
      if (audit_pool.size() < 4096 && (rng() & 7) == 0) audit_pool.push_back(t);
    });
    rhs_classes.insert(rhs_classes.end(), form_classes.begin(), form_classes.end());
    std::sort(rhs_classes.begin(), rhs_classes.end());
    rhs_classes.erase(std::unique(rhs_classes.begin(), rhs_classes.end()),
                      rhs_classes.end());

    // Audit: random form tuples, per-term orbit-shifted, must stay extremal
    // for the LHS weight set (class membership must be representative).
    std::uint64_t audit_checked = 0, audit_failures = 0;
    const auto members = lhs_w.members().to_vector();
    std::uint32_t audits = static_cast<std::uint32_t>(
        std::min<std::size_t>(audit_pool.size(), 64));
    for (std::uint32_t a = 0; a < audits; ++a) {
      auto t = audit_pool[rng() % audit_pool.size()];
      std::vector<std::uint32_t> shifted(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) {
        shifted[i] = chk.mod.mul(members[rng() % members.size()], t[i]);
      }
      ++audit_checked;
      Sequence seq{chk.mod.value(), shifted};
      if (has_zero_sum(seq, lhs_w, mode)) ++audit_failures;
    }
    chk.add_stat("class_level_comparison", 1);
    chk.add_stat("audit_checked", audit_checked);
    chk.add_stat("audit_failures", audit_failures);
    if (audit_failures > 0) {
      chk.withheld("orbit_invariance_audit_failed");
      return;
    }
  }
  auto cmp =
      compare_sorted_tuples(lhs_classes, rhs_classes, chk.options.max_counterexamples);
  chk.finish_equality(cmp);
}

}  // namespace

TheoremReport verify_theorem(const std::string& theorem_id, std::uint32_t n,
                             std::optional<std::uint32_t> p_prime,
                             const VerifyOptions& options) {
  TheoremCheck chk;
  chk.options = options;
  chk.mod = Modulus::factorize(n);
  chk.report.id = theorem_id;
  chk.report.n = n;
  chk.report.p_prime = p_prime;
  const Modulus& mod = chk.mod;
  const bool expl = options.exploratory;

  const bool wants_p = theorem_id == "dextl" || theorem_id == "extl3" ||
                       theorem_id == "extl2" || theorem_id == "cextl" ||
                       theorem_id == "lext2";
  if (wants_p) {
    if (!p_prime) {
      throw std::invalid_argument("theorem " + theorem_id +
                                  " needs a prime divisor p (--p)");
    }
    if (!mod.is_prime_divisor(*p_prime)) {
      throw std::invalid_argument(std::to_string(*p_prime) +
                                  " is not a prime divisor of " + std::to_string(n));
    }
  }

  if (theorem_id == "dexts" || theorem_id == "dexts2") {
    check_hyp(mod.squarefree() && mod.min_prime() >= 7 && !mod.is_prime(),
              "dexts/dexts2 need n squarefree, not prime, primes >= 7", expl);
    auto s_w = s_weights(mod);
    FormGenerator gen(n, 0);
    const bool pair_form = mod.omega() == 2;
    run_family_equality(chk, s_w, ZeroSumMode::kSubsequence, true,
                        [&](const auto& emit) {
                          if (pair_form) gen.pair_split_forms(s_w, emit);
                        });
    if (theorem_id == "dexts" && chk.report.verdict == Verdict::kCounterexample) {
      // One-directional statement: only LHS-not-in-RHS elements refute it.
      bool lhs_only_seen = false;
      for (auto& [k, v] : chk.report.stats) {
        if (k == "lhs_only" && v > 0) lhs_only_seen = true;
      }
      if (!lhs_only_seen) {
        chk.report.verdict = Verdict::kVerified;
        chk.report.counterexamples.clear();
        chk.report.counterexample_total = 0;
      }
    }
    return chk.report;
  }

  if (theorem_id == "cexts") {
    check_hyp(mod.squarefree() && mod.min_prime() >= 7 && !mod.is_prime(),
              "cexts needs n squarefree, not prime, primes >= 7", expl);
    run_family_equality(chk, s_weights(mod), ZeroSumMode::kConsecutive, true,
                        [](const auto&) {});
    return chk.report;
  }

  if (theorem_id == "dextl") {
    check_hyp(mod.squarefree() && mod.min_prime() >= 7 && mod.omega() != 2 &&
                  mod.omega() != 3,
              "dextl needs n squarefree, primes >= 7, omega not in {2,3}", expl);
    run_family_equality(chk, l_weights(mod, *p_prime), ZeroSumMode::kSubsequence,
                        true, [](const auto&) {});
    return chk.report;
  }

  if (theorem_id == "cextl") {
    check_hyp(mod.squarefree() && mod.min_prime() >= 7 && mod.omega() != 2,
              "cextl needs n squarefree, primes >= 7, omega != 2", expl);
    run_family_equality(chk, l_weights(mod, *p_prime), ZeroSumMode::kConsecutive,
                        true, [](const auto&) {});
    return chk.report;
  }

  if (theorem_id == "extl3") {
    check_hyp(mod.squarefree() && mod.min_prime() >= 7 && mod.omega() == 3,
              "extl3 needs n squarefree, primes >= 7, omega = 3", expl);
    const std::uint32_t n_prime = n / *p_prime;
    const auto sub_mod = Modulus::factorize(n_prime);
    auto dext_s = extremal_pairs(s_weights(sub_mod), ZeroSumMode::kSubsequence);
    auto dext_u = extremal_pairs(units(sub_mod), ZeroSumMode::kSubsequence);
    FormGenerator gen(n, *p_prime);
    run_family_equality(chk, l_weights(mod, *p_prime), ZeroSumMode::kSubsequence,
                        true,
                        [&](const auto& emit) { gen.extl3_forms(dext_s, dext_u, emit); });
    return chk.report;
  }

  if (theorem_id == "extl2") {
    check_hyp(mod.squarefree() && mod.min_prime() >= 7 && mod.omega() == 2,
              "extl2 needs n = p'q with distinct primes >= 7", expl);
    const std::uint32_t q = other_prime(mod, *p_prime);
    auto dext_q =
        extremal_pairs(unit_squares(Modulus::factorize(q)), ZeroSumMode::kSubsequence);
    FormGenerator gen(n, *p_prime);
    run_family_equality(chk, l_weights(mod, *p_prime), ZeroSumMode::kSubsequence,
                        false, [&](const auto& emit) { gen.extl2_forms(dext_q, emit); });
    return chk.report;
  }

  if (theorem_id == "lext2") {
    check_hyp(mod.squarefree() && mod.min_prime() >= 7 && mod.omega() == 2,
              "lext2 needs n = p'q with distinct primes >= 7", expl);
    const std::uint32_t q = other_prime(mod, *p_prime);
    auto cext_q =
        extremal_pairs(unit_squares(Modulus::factorize(q)), ZeroSumMode::kConsecutive);
    FormGenerator gen(n, *p_prime);
    run_family_equality(chk, l_weights(mod, *p_prime), ZeroSumMode::kConsecutive,
                        false, [&](const auto& emit) { gen.lext2_forms(cext_q, emit); },
                        /*check_perm_diagnostic=*/true);
    return chk.report;
  }

  if (theorem_id == "qp_remark") {
    check_hyp(mod.is_prime(), "qp_remark needs a prime modulus", expl);
    auto q_w = unit_squares(mod);
    FormGenerator gen(n, 0);
    run_family_equality(chk, q_w, ZeroSumMode::kSubsequence, false,
                        [&](const auto& emit) { gen.pair_split_forms(q_w, emit); });
    if (chk.report.verdict == Verdict::kWithheld) return chk.report;
    // The remark covers both kinds of extremal pairs; check windows too.
    TheoremCheck chk_c;
    chk_c.options = options;
    chk_c.mod = chk.mod;
    chk_c.report.id = theorem_id;
    chk_c.report.n = n;
    run_family_equality(chk_c, q_w, ZeroSumMode::kConsecutive, false,
                        [&](const auto& emit) { gen.pair_split_forms(q_w, emit); });
    for (auto& [k, v] : chk_c.report.stats) chk.add_stat("consecutive_" + k, v);
    chk.report.nodes += chk_c.report.nodes;
    chk.report.counterexample_total += chk_c.report.counterexample_total;
    for (auto& s : chk_c.report.counterexamples) {
      if (chk.report.counterexamples.size() >= options.max_counterexamples) break;
      chk.report.counterexamples.push_back(std::move(s));
    }
    if (chk_c.report.verdict == Verdict::kCounterexample ||
        chk.report.verdict == Verdict::kCounterexample) {
      chk.report.verdict = Verdict::kCounterexample;
    } else if (chk_c.report.verdict == Verdict::kWithheld) {
      chk.report.verdict = Verdict::kWithheld;
    }
    return chk.report;
  }

  throw std::invalid_argument("unknown theorem id: " + theorem_id);
}

}  // namespace zslab
