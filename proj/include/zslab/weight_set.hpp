#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "zslab/modulus.hpp"
#include "zslab/residue_set.hpp"

namespace zslab {

enum class WeightKind { kUnits, kUnitSquares, kJacobiPlus, kJacobiAgree, kCustom };

/// A weight set A subset of Z_n. The named kinds are subgroups of U(n);
/// custom sets are verified for closure when small enough and otherwise
/// treated as plain subsets (orbit pruning is then bypassed).
class WeightSet {
 public:
  const Modulus& modulus() const { return modulus_; }
  std::uint32_t n() const { return modulus_.value(); }
  const ResidueSet& members() const { return members_; }
  WeightKind kind() const { return kind_; }
  std::uint32_t parameter() const { return parameter_; }

  bool contains(std::uint32_t x) const { return members_.contains(x); }
  std::uint32_t size() const { return members_.count(); }
  bool is_group() const { return group_; }

  /// CLI spelling: "U", "Q", "S", "L:7", "custom:1,2,4".
  std::string label() const;

  friend WeightSet units(const Modulus&);
  friend WeightSet unit_squares(const Modulus&);
  friend WeightSet s_weights(const Modulus&);
  friend WeightSet l_weights(const Modulus&, std::uint32_t);
  friend WeightSet custom_weights(const Modulus&, const std::vector<std::uint32_t>&);

 private:
  WeightSet(Modulus m, ResidueSet members, WeightKind kind, std::uint32_t param,
            bool group)
      : modulus_(std::move(m)),
        members_(std::move(members)),
        kind_(kind),
        parameter_(param),
        group_(group) {}

  Modulus modulus_;
  ResidueSet members_;
  WeightKind kind_;
  std::uint32_t parameter_;  // p for the L kind, 0 otherwise
  bool group_;
};

/// U(n): the multiplicative group of units.
WeightSet units(const Modulus& n);

/// U(n)^2 = { x^2 : x in U(n) }; for prime p this is Q_p.
WeightSet unit_squares(const Modulus& n);

/// S(n) = { x in U(n) : (x/n) = 1 }.
WeightSet s_weights(const Modulus& n);

/// L(n;p) = { a in U(n) : (a/n) = (a/p) } for a prime divisor p of n.
WeightSet l_weights(const Modulus& n, std::uint32_t p);

/// Arbitrary subset of Z_n. Runs the subgroup check when |W|^2 is small.
WeightSet custom_weights(const Modulus& n, const std::vector<std::uint32_t>& members);

/// Parses the CLI weight-set grammar: U | Q | S | L:<p> | custom:<r1,r2,...>.
WeightSet parse_weight_set(const std::string& spec, const Modulus& n);

/// True iff 1 in W and W is multiplicatively closed (brute-force check).
bool is_multiplicative_subgroup(const Modulus& n, const ResidueSet& members);

/// Partition of Z_n into orbits { a*x : a in W } under a subgroup W.
/// The canonical representative of an orbit is its minimum element.
class OrbitTable {
 public:
  /// Throws std::invalid_argument when W is not a subgroup.
  static OrbitTable build(const WeightSet& w);

  std::uint32_t modulus() const { return n_; }
  std::uint32_t orbit_count() const {
    return static_cast<std::uint32_t>(reps_.size());
  }
  std::uint32_t canonical(std::uint32_t x) const { return reps_[index_of_[x]]; }
  std::uint32_t orbit_index(std::uint32_t x) const { return index_of_[x]; }

  /// Representatives in ascending order; reps()[0] == 0.
  const std::vector<std::uint32_t>& reps() const { return reps_; }
  const std::vector<std::uint32_t>& orbit_members(std::uint32_t index) const {
    return members_[index];
  }

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint32_t> index_of_;  // residue -> orbit index
  std::vector<std::uint32_t> reps_;      // orbit index -> representative
  std::vector<std::vector<std::uint32_t>> members_;
};

}  // namespace zslab
