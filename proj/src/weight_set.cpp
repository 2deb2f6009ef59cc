#include "zslab/weight_set.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace zslab {

namespace {

// Subgroup checks on custom sets are skipped above this size; the search
// layer then runs without orbit pruning.
constexpr std::uint32_t kClosureCheckLimit = 4096;

}  // namespace

std::string WeightSet::label() const {
  switch (kind_) {
    case WeightKind::kUnits:
      return "U";
    case WeightKind::kUnitSquares:
      return "Q";
    case WeightKind::kJacobiPlus:
      return "S";
    case WeightKind::kJacobiAgree:
      return "L:" + std::to_string(parameter_);
    case WeightKind::kCustom: {
      std::string out = "custom:";
      bool first = true;
      members_.for_each([&](std::uint32_t r) {
        if (!first) out += ',';
        out += std::to_string(r);
        first = false;
      });
      return out;
    }
  }
  return "?";
}

WeightSet units(const Modulus& n) {
  ResidueSet m(n.value());
  for (std::uint32_t x = 1; x < n.value(); ++x) {
    if (std::gcd(x, n.value()) == 1) m.insert(x);
  }
  return WeightSet(n, std::move(m), WeightKind::kUnits, 0, true);
}

WeightSet unit_squares(const Modulus& n) {
  ResidueSet m(n.value());
  for (std::uint32_t x = 1; x < n.value(); ++x) {
    if (std::gcd(x, n.value()) == 1) m.insert(n.mul(x, x));
  }
  return WeightSet(n, std::move(m), WeightKind::kUnitSquares, 0, true);
}

WeightSet s_weights(const Modulus& n) {
  ResidueSet m(n.value());
  for (std::uint32_t x = 1; x < n.value(); ++x) {
    if (jacobi(x, n.value()) == 1) m.insert(x);
  }
  return WeightSet(n, std::move(m), WeightKind::kJacobiPlus, 0, true);
}

WeightSet l_weights(const Modulus& n, std::uint32_t p) {
  if (!n.is_prime_divisor(p)) {
    throw std::invalid_argument(std::to_string(p) +
                                " is not a prime divisor of " +
                                std::to_string(n.value()));
  }
  ResidueSet m(n.value());
  for (std::uint32_t x = 1; x < n.value(); ++x) {
    if (std::gcd(x, n.value()) != 1) continue;
    if (jacobi(x, n.value()) == jacobi(x % p, p)) m.insert(x);
  }
  return WeightSet(n, std::move(m), WeightKind::kJacobiAgree, p, true);
}

bool is_multiplicative_subgroup(const Modulus& n, const ResidueSet& members) {
  if (!members.contains(1)) return false;
  bool closed = true;
  members.for_each([&](std::uint32_t a) {
    if (!closed) return;
    members.for_each([&](std::uint32_t b) {
      if (!closed) return;
      if (!members.contains(n.mul(a, b))) closed = false;
    });
  });
  return closed;
}

WeightSet custom_weights(const Modulus& n,
                         const std::vector<std::uint32_t>& members) {
  ResidueSet m(n.value());
  for (auto x : members) {
    if (x >= n.value()) {
      throw std::invalid_argument("weight " + std::to_string(x) +
                                  " out of range for modulus " +
                                  std::to_string(n.value()));
    }
    m.insert(x);
  }
  bool group = m.count() <= kClosureCheckLimit && is_multiplicative_subgroup(n, m);
  return WeightSet(n, std::move(m), WeightKind::kCustom, 0, group);
}

WeightSet parse_weight_set(const std::string& spec, const Modulus& n) {
  if (spec == "U") return units(n);
  if (spec == "Q") return unit_squares(n);
  if (spec == "S") return s_weights(n);
  if (spec.rfind("L:", 0) == 0) {
    std::uint32_t p = 0;
    const char* b = spec.data() + 2;
    auto [next, ec] = std::from_chars(b, spec.data() + spec.size(), p);
    if (ec != std::errc() || next != spec.data() + spec.size()) {
      throw std::invalid_argument("malformed weight-set spec: " + spec);
    }
    return l_weights(n, p);
  }
  if (spec.rfind("custom:", 0) == 0) {
    std::vector<std::uint32_t> vals;
    std::size_t pos = 7;
    while (pos < spec.size()) {
      std::uint32_t v = 0;
      auto [next, ec] = std::from_chars(spec.data() + pos, spec.data() + spec.size(), v);
      if (ec != std::errc()) {
        throw std::invalid_argument("malformed weight-set spec: " + spec);
      }
      vals.push_back(v);
      pos = static_cast<std::size_t>(next - spec.data());
      if (pos < spec.size()) {
        if (spec[pos] != ',') {
          throw std::invalid_argument("malformed weight-set spec: " + spec);
        }
        ++pos;
      }
    }
    if (vals.empty()) {
      throw std::invalid_argument("custom weight set must be nonempty");
    }
    return custom_weights(n, vals);
  }
  throw std::invalid_argument("unknown weight-set spec: " + spec +
                              " (expected U | Q | S | L:<p> | custom:<r1,...>)");
}

OrbitTable OrbitTable::build(const WeightSet& w) {
  if (!w.is_group()) {
    throw std::invalid_argument(
        "orbit canonicalization requires a group weight set");
  }
  const std::uint32_t n = w.n();
  OrbitTable t;
  t.n_ = n;
  t.index_of_.assign(n, UINT32_MAX);
  std::vector<std::uint32_t> wmembers = w.members().to_vector();
  for (std::uint32_t x = 0; x < n; ++x) {
    if (t.index_of_[x] != UINT32_MAX) continue;
    const std::uint32_t idx = static_cast<std::uint32_t>(t.reps_.size());
    std::vector<std::uint32_t> orbit;
    for (auto a : wmembers) {
      const std::uint32_t y = w.modulus().mul(a, x);
      if (t.index_of_[y] == UINT32_MAX) {
        t.index_of_[y] = idx;
        orbit.push_back(y);
      }
    }
    // x is minimal in its orbit because residues are scanned in order.
    std::sort(orbit.begin(), orbit.end());
    t.reps_.push_back(x);
    t.members_.push_back(std::move(orbit));
  }
  return t;
}

}  // namespace zslab
