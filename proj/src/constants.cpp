#include "zslab/constants.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

namespace zslab {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ZSLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

namespace {

using Clock = std::chrono::steady_clock;

struct RootOutcome {
  bool found = false;
  std::vector<std::uint32_t> witness;
  std::uint64_t nodes = 0;
  bool complete = true;
};

struct FrontierOutcome {
  bool nonempty = false;
  std::vector<std::uint32_t> witness;  // lexicographically least, when found
  std::uint64_t nodes = 0;
  bool complete = true;
};

// DFS for one root term. Stops at the first leaf (ascending exploration, so
// that leaf is the lex-least of the subtree) or when the budget runs out.
// Every root is explored independently with its own pre-split budget: the
// outcome and node counts never depend on thread scheduling.
class RootSearch {
 public:
  RootSearch(const ZeroSumScanner& scanner,
             const std::vector<std::uint32_t>& terms, ZeroSumMode mode,
             std::uint32_t depth, std::uint64_t node_budget,
             std::optional<Clock::time_point> deadline, std::uint32_t root_index)
      : scanner_(scanner),
        terms_(terms),
        mode_(mode),
        depth_(depth),
        node_budget_(node_budget),
        deadline_(deadline),
        root_index_(root_index) {
    states_.reserve(depth + 1);
    states_.push_back(scanner.initial_state());
    for (std::uint32_t i = 0; i < depth; ++i) states_.push_back(scanner.initial_state());
    prefix_.reserve(depth);
    // Single extensions on very large moduli can take milliseconds, so the
    // wall-clock check must not wait for a large node count.
    deadline_stride_ = scanner.weights().n() > 16384 ? 1 : 1024;
  }

  RootOutcome run() {
    dfs(0);
    return std::move(out_);
  }

 private:
  bool aborted() {
    if (out_.nodes >= node_budget_) return true;
    return deadline_ && (out_.nodes % deadline_stride_) == 0 &&
           Clock::now() > *deadline_;
  }

  void dfs(std::uint32_t level) {
    if (out_.found) return;
    if (level == depth_) {
      out_.found = true;
      out_.witness = prefix_;
      return;
    }
    const std::uint32_t from =
        (mode_ == ZeroSumMode::kSubsequence && level > 0) ? term_index_.back() : 0;
    for (std::uint32_t ti = from; ti < terms_.size(); ++ti) {
      if (level == 0 && ti != root_index_) continue;
      // Reversal reduction for windows: last term >= first term.
      if (mode_ == ZeroSumMode::kConsecutive && level + 1 == depth_ && depth_ >= 2 &&
          terms_[ti] < prefix_.front()) {
        continue;
      }
      if (aborted()) {
        out_.complete = false;
        return;
      }
      ++out_.nodes;
      scanner_.extend_into(states_[level], terms_[ti], states_[level + 1]);
      if (states_[level + 1].found) continue;
      prefix_.push_back(terms_[ti]);
      term_index_.push_back(ti);
      dfs(level + 1);
      prefix_.pop_back();
      term_index_.pop_back();
      if (out_.found || !out_.complete) return;
    }
  }

  const ZeroSumScanner& scanner_;
  const std::vector<std::uint32_t>& terms_;
  ZeroSumMode mode_;
  std::uint32_t depth_;
  std::uint64_t node_budget_;
  std::optional<Clock::time_point> deadline_;
  std::uint32_t root_index_;
  std::uint64_t deadline_stride_ = 1024;

  std::vector<ZeroSumScanner::State> states_;
  std::vector<std::uint32_t> prefix_;
  std::vector<std::uint32_t> term_index_;
  RootOutcome out_;
};

// Is there a zero-sum-free canonical sequence of length `depth`?
FrontierOutcome frontier_at_depth(const ZeroSumScanner& scanner,
                                  const std::vector<std::uint32_t>& terms,
                                  ZeroSumMode mode, std::uint32_t depth,
                                  std::uint64_t max_nodes,
                                  std::optional<Clock::time_point> deadline,
                                  unsigned threads) {
  FrontierOutcome out;
  if (terms.empty()) return out;  // empty frontier
  const std::uint32_t roots = static_cast<std::uint32_t>(terms.size());
  // Budget is pre-split per root so results do not depend on thread timing.
  const std::uint64_t per_root = std::max<std::uint64_t>(1, max_nodes / roots);
  std::atomic<std::uint32_t> next{0};
  std::vector<RootOutcome> results(roots);

  auto worker = [&]() {
    for (;;) {
      const std::uint32_t r = next.fetch_add(1, std::memory_order_relaxed);
      if (r >= roots) return;
      RootSearch search(scanner, terms, mode, depth, per_root, deadline, r);
      results[r] = search.run();
    }
  };

  const unsigned width = std::min<unsigned>(std::max(1u, threads), roots);
  if (width <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(width);
    for (unsigned i = 0; i < width; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::uint32_t r = 0; r < roots; ++r) {
    out.nodes += results[r].nodes;
    if (results[r].found) {
      out.nonempty = true;
      out.witness = std::move(results[r].witness);
      return out;  // smallest root with a find = lex-least witness
    }
    if (!results[r].complete) out.complete = false;
  }
  return out;
}

}  // namespace

ConstantResult zero_sum_constant(const WeightSet& w, ZeroSumMode mode,
                                 const SearchBudget& budget, unsigned threads) {
  const auto started = Clock::now();
  ConstantResult res;
  res.mode = mode;

  std::shared_ptr<const OrbitTable> orbits;
  std::vector<std::uint32_t> terms;
  if (w.is_group()) {
    orbits = std::make_shared<const OrbitTable>(OrbitTable::build(w));
    for (auto r : orbits->reps()) {
      if (r != 0) terms.push_back(r);
    }
  } else {
    // Unpruned fallback: canonical reduction is unsound for non-group sets.
    for (std::uint32_t x = 1; x < w.n(); ++x) terms.push_back(x);
  }
  ZeroSumScanner scanner(w, mode, orbits);

  const std::uint32_t cap = budget.depth_cap.value_or(
      (w.modulus().omega() < 30 ? (1u << w.modulus().omega()) : UINT32_MAX - 2) + 2);
  std::optional<Clock::time_point> deadline;
  if (budget.max_seconds > 0) {
    deadline = started + std::chrono::duration_cast<Clock::duration>(
                             std::chrono::duration<double>(budget.max_seconds));
  }
  const unsigned width = resolve_threads(threads);

  std::optional<Sequence> certificate;
  for (std::uint32_t k = 1; k <= cap; ++k) {
    const std::uint64_t remaining =
        budget.max_nodes > res.nodes ? budget.max_nodes - res.nodes : 0;
    auto frontier =
        frontier_at_depth(scanner, terms, mode, k, remaining, deadline, width);
    res.nodes += frontier.nodes;
    if (frontier.nonempty) {
      certificate = Sequence{w.n(), std::move(frontier.witness)};
      continue;
    }
    if (!frontier.complete) {
      // Budget ran out with no witness at depth k: the constant is only known
      // to be >= k.
      res.value = k;
      res.exhaustive = false;
      res.certificate = std::move(certificate);
      res.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
      return res;
    }
    res.value = k;
    res.exhaustive = true;
    res.certificate = std::move(certificate);
    res.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return res;
  }

  // Extremal sequences exist at every depth up to the cap.
  res.value = cap + 1;
  res.exhaustive = false;
  res.certificate = std::move(certificate);
  res.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return res;
}

Prediction predicted_constants(const WeightSet& w) {
  const Modulus& m = w.modulus();
  const std::uint32_t omega = m.omega();
  Prediction p;
  switch (w.kind()) {
    case WeightKind::kUnits:
      if (m.squarefree()) {
        p.d = omega + 1;
        p.c = 1u << omega;
        p.hypothesis = "U(n), n odd squarefree";
      } else {
        p.hypothesis = "not covered: U(n) values are only predicted for squarefree n";
      }
      break;
    case WeightKind::kUnitSquares:
      if (m.is_prime()) {
        p.d = 3;
        p.c = 3;
        p.hypothesis = "Q_p, p an odd prime";
      } else {
        p.hypothesis = "not covered: Q is only predicted for prime moduli";
      }
      break;
    case WeightKind::kJacobiPlus:
      if (m.is_prime()) {
        p.d = 3;
        p.c = 3;
        p.hypothesis = "S(p) = Q_p, p an odd prime";
      } else if (m.squarefree() && m.min_prime() >= 7) {
        p.d = omega + 1;
        p.c = 1u << omega;
        p.hypothesis = "S(n), n squarefree with every prime divisor >= 7";
      } else {
        p.hypothesis =
            "not covered: S(n) needs n prime, or squarefree with primes >= 7";
      }
      break;
    case WeightKind::kJacobiAgree:
      if (m.squarefree() && m.min_prime() >= 7) {
        if (omega == 2) {
          p.d = 4;
          p.c = 6;
          p.hypothesis = "L(n;p), n a product of two distinct primes >= 7";
        } else {
          p.d = omega + 1;
          p.c = 1u << omega;
          p.hypothesis =
              "L(n;p), n squarefree, primes >= 7, not a product of two primes";
        }
      } else {
        p.hypothesis =
            "not covered: L(n;p) needs n squarefree with primes >= 7";
      }
      break;
    case WeightKind::kCustom:
      p.hypothesis = "not covered: custom weight set";
      break;
  }
  return p;
}

bool certify_lower_bound(const Sequence& s, const WeightSet& w, ZeroSumMode mode) {
  return !has_zero_sum(s, w, mode);
}

Sequence window_free_certificate(const Modulus& n) {
  if (!n.squarefree()) {
    throw std::invalid_argument("window-free construction needs squarefree n");
  }
  std::vector<std::uint32_t> terms{1};
  std::uint32_t built = n.factors()[0].prime;
  for (std::size_t i = 1; i < n.factors().size(); ++i) {
    const std::uint32_t p = n.factors()[i].prime;
    std::vector<std::uint32_t> next;
    next.reserve(2 * terms.size() + 1);
    for (auto t : terms) next.push_back(t * p);
    next.push_back(1);
    for (auto t : terms) next.push_back(t * p);
    terms = std::move(next);
    built *= p;
  }
  return Sequence{n.value(), std::move(terms)};
}

}  // namespace zslab
