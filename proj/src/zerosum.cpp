#include "zslab/zerosum.hpp"

#include <algorithm>
#include <stdexcept>

namespace zslab {

bool verify_witness(const Sequence& s, const WeightSet& w, const Witness& wit) {
  if (wit.indices.empty() || wit.indices.size() != wit.weights.size()) return false;
  const std::uint32_t n = s.n;
  std::uint64_t sum = 0;
  for (std::size_t k = 0; k < wit.indices.size(); ++k) {
    const std::uint32_t idx = wit.indices[k];
    if (idx >= s.terms.size()) return false;
    if (k > 0 && wit.indices[k - 1] >= idx) return false;
    if (wit.mode == ZeroSumMode::kConsecutive && k > 0 &&
        wit.indices[k] != wit.indices[k - 1] + 1) {
      return false;
    }
    if (!w.contains(wit.weights[k])) return false;
    sum = (sum + std::uint64_t(wit.weights[k]) * s.terms[idx]) % n;
  }
  return sum == 0;
}

TranslateCache::TranslateCache(const WeightSet& w,
                               std::shared_ptr<const OrbitTable> orbits)
    : weights_(w), orbits_(std::move(orbits)) {
  if (w.is_group() && !orbits_) {
    orbits_ = std::make_shared<const OrbitTable>(OrbitTable::build(w));
  }
  if (orbits_) {
    by_orbit_.resize(orbits_->orbit_count());
    for (std::uint32_t i = 0; i < orbits_->orbit_count(); ++i) {
      by_orbit_[i] = std::make_unique<Entry>(build_for(orbits_->reps()[i]));
    }
  }
}

ResidueSet TranslateCache::build_for(std::uint32_t x) const {
  ResidueSet t(weights_.n());
  weights_.members().for_each(
      [&](std::uint32_t a) { t.insert(weights_.modulus().mul(a, x)); });
  return t;
}

const TranslateCache::Entry& TranslateCache::translates(std::uint32_t x) const {
  if (orbits_) return *by_orbit_[orbits_->orbit_index(x)];
  std::lock_guard<std::mutex> lock(mu_);
  auto it = by_term_.find(x);
  if (it == by_term_.end()) {
    it = by_term_.emplace(x, std::make_unique<Entry>(build_for(x))).first;
  }
  return *it->second;
}

ZeroSumScanner::ZeroSumScanner(const WeightSet& w, ZeroSumMode mode,
                               std::shared_ptr<const OrbitTable> orbits)
    : mode_(mode), cache_(w, std::move(orbits)) {}

ZeroSumScanner::State ZeroSumScanner::initial_state() const {
  return State{ResidueSet(cache_.weights().n()), false};
}

// Precondition: out is not the same object as s (storage is reused).
void ZeroSumScanner::extend_into(const State& s, std::uint32_t term,
                                 State& out) const {
  const auto& t = cache_.translates(term);
  if (mode_ == ZeroSumMode::kSubsequence) {
    out.reach = s.reach;
    out.reach |= t.set;
  } else {
    out.reach = t.set;
  }
  or_sumset_into(out.reach, s.reach, t.set, t.rotated);
  out.found = s.found || out.reach.contains_zero();
}

ZeroSumScanner::State ZeroSumScanner::extended(const State& s,
                                               std::uint32_t term) const {
  State out = initial_state();
  extend_into(s, term, out);
  return out;
}

bool ZeroSumScanner::scan(const Sequence& s) const {
  if (s.n != cache_.weights().n()) {
    throw std::invalid_argument("sequence modulus does not match weight set");
  }
  State st = initial_state();
  for (auto x : s.terms) {
    st = extended(st, x);
    if (st.found) return true;
  }
  return false;
}

ResidueSet weighted_translates(const WeightSet& w, std::uint32_t x) {
  ResidueSet t(w.n());
  w.members().for_each(
      [&](std::uint32_t a) { t.insert(w.modulus().mul(a, x)); });
  return t;
}

bool has_zero_subsequence(const Sequence& s, const WeightSet& w) {
  return ZeroSumScanner(w, ZeroSumMode::kSubsequence).scan(s);
}

bool has_zero_consecutive(const Sequence& s, const WeightSet& w) {
  return ZeroSumScanner(w, ZeroSumMode::kConsecutive).scan(s);
}

bool has_zero_sum(const Sequence& s, const WeightSet& w, ZeroSumMode mode) {
  return ZeroSumScanner(w, mode).scan(s);
}

namespace {

// Weighted-sum sets of every nonempty subsequence of the prefix, one per
// prefix length (index 0 = empty prefix = empty set).
std::vector<ResidueSet> subsequence_reach_chain(const Sequence& s,
                                                const ZeroSumScanner& sc) {
  std::vector<ResidueSet> chain;
  chain.reserve(s.terms.size() + 1);
  auto st = sc.initial_state();
  chain.push_back(st.reach);
  for (auto x : s.terms) {
    st = sc.extended(st, x);
    chain.push_back(st.reach);
  }
  return chain;
}

// Smallest weight a in W with (target - a*x) mod n landing in `prev`
// (or equal to zero when allow_zero).
std::optional<std::uint32_t> pick_weight(const WeightSet& w, std::uint32_t x,
                                         std::uint32_t target,
                                         const ResidueSet* prev,
                                         bool allow_stop) {
  const auto& mod = w.modulus();
  std::optional<std::uint32_t> found;
  w.members().for_each([&](std::uint32_t a) {
    if (found) return;
    const std::uint32_t rest = mod.add(target, mod.neg(mod.mul(a, x)));
    if ((allow_stop && rest == 0) || (prev && prev->contains(rest))) found = a;
  });
  return found;
}

std::optional<Witness> subsequence_witness(const Sequence& s, const WeightSet& w) {
  ZeroSumScanner sc(w, ZeroSumMode::kSubsequence);
  auto chain = subsequence_reach_chain(s, sc);
  std::size_t j = 1;
  while (j < chain.size() && !chain[j].contains_zero()) ++j;
  if (j >= chain.size()) return std::nullopt;

  // Walk back from the first prefix whose reach hits zero. Entering step i the
  // residual target is reachable from positions < i; position i-1 is skipped
  // when the target is reachable without it.
  Witness wit;
  wit.mode = ZeroSumMode::kSubsequence;
  const auto& mod = w.modulus();
  std::uint32_t target = 0;
  bool done = false;
  for (std::size_t i = j; i >= 1 && !done; --i) {
    if (chain[i - 1].contains(target)) continue;
    auto a = pick_weight(w, s.terms[i - 1], target, &chain[i - 1], true);
    if (!a) throw std::logic_error("internal error: witness weight walk failed");
    wit.indices.push_back(static_cast<std::uint32_t>(i - 1));
    wit.weights.push_back(*a);
    const std::uint32_t rest = mod.add(target, mod.neg(mod.mul(*a, s.terms[i - 1])));
    if (rest == 0) {
      done = true;
    } else {
      target = rest;
    }
  }
  if (!done) {
    throw std::logic_error("internal error: witness reconstruction failed");
  }
  std::reverse(wit.indices.begin(), wit.indices.end());
  std::reverse(wit.weights.begin(), wit.weights.end());
  if (!verify_witness(s, w, wit)) {
    throw std::logic_error("internal error: witness reconstruction failed");
  }
  return wit;
}

std::optional<Witness> consecutive_witness(const Sequence& s, const WeightSet& w) {
  ZeroSumScanner sc(w, ZeroSumMode::kConsecutive);
  // First end position j whose folded window reach hits zero.
  auto st = sc.initial_state();
  std::size_t j = s.terms.size();
  {
    std::size_t k = 0;
    for (auto x : s.terms) {
      st = sc.extended(st, x);
      if (st.reach.contains_zero()) {
        j = k;
        break;
      }
      ++k;
    }
  }
  if (j == s.terms.size()) return std::nullopt;

  // Shortest window ending at j: fold translate sets backward from j.
  const auto& cache = sc.translate_cache();
  std::size_t start = j;
  {
    ResidueSet back = cache.translates(s.terms[j]).set;
    while (!back.contains_zero()) {
      if (start == 0) {
        throw std::logic_error("internal error: window witness walk failed");
      }
      --start;
      const auto& t = cache.translates(s.terms[start]);
      ResidueSet next(back.modulus());
      or_sumset_into(next, back, t.set, t.rotated);
      back = std::move(next);
    }
  }

  // Forward reach sets within [start, j], then walk weights backward.
  std::vector<ResidueSet> fwd;
  fwd.reserve(j - start + 1);
  for (std::size_t i = start; i <= j; ++i) {
    const auto& t = cache.translates(s.terms[i]);
    if (fwd.empty()) {
      fwd.push_back(t.set);
    } else {
      ResidueSet next(t.set.modulus());
      or_sumset_into(next, fwd.back(), t.set, t.rotated);
      fwd.push_back(std::move(next));
    }
  }

  Witness wit;
  wit.mode = ZeroSumMode::kConsecutive;
  const auto& mod = w.modulus();
  std::uint32_t target = 0;
  for (std::size_t i = j + 1; i-- > start + 1;) {
    auto a = pick_weight(w, s.terms[i], target, &fwd[i - start - 1], false);
    if (!a) throw std::logic_error("internal error: window weight walk failed");
    wit.indices.push_back(static_cast<std::uint32_t>(i));
    wit.weights.push_back(*a);
    target = mod.add(target, mod.neg(mod.mul(*a, s.terms[i])));
  }
  auto a0 = pick_weight(w, s.terms[start], target, nullptr, true);
  if (!a0) throw std::logic_error("internal error: window weight walk failed");
  wit.indices.push_back(static_cast<std::uint32_t>(start));
  wit.weights.push_back(*a0);
  std::reverse(wit.indices.begin(), wit.indices.end());
  std::reverse(wit.weights.begin(), wit.weights.end());
  if (!verify_witness(s, w, wit)) {
    throw std::logic_error("internal error: witness reconstruction failed");
  }
  return wit;
}

}  // namespace

std::optional<Witness> find_zero_sum(const Sequence& s, const WeightSet& w,
                                     ZeroSumMode mode) {
  if (s.n != w.n()) {
    throw std::invalid_argument("sequence modulus does not match weight set");
  }
  return mode == ZeroSumMode::kSubsequence ? subsequence_witness(s, w)
                                           : consecutive_witness(s, w);
}

}  // namespace zslab
