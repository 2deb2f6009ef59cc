#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace zslab {

/// Default upper limit for moduli accepted by factorize().
inline constexpr std::uint32_t kDefaultModulusCeiling = 1'000'000;

struct PrimePower {
  std::uint32_t prime = 0;
  std::uint32_t exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// An odd modulus n >= 3 together with its complete factorization.
/// Immutable after construction; all queries are pure.
class Modulus {
 public:
  /// Factorizes n by trial division. Throws std::invalid_argument for even n,
  /// n < 3, or n above the ceiling.
  static Modulus factorize(std::uint32_t n,
                           std::uint32_t ceiling = kDefaultModulusCeiling);

  std::uint32_t value() const { return n_; }
  const std::vector<PrimePower>& factors() const { return factors_; }

  /// Number of distinct prime divisors.
  std::uint32_t omega() const {
    return static_cast<std::uint32_t>(factors_.size());
  }
  bool squarefree() const { return squarefree_; }
  bool is_prime() const {
    return factors_.size() == 1 && factors_[0].exponent == 1;
  }
  std::uint32_t min_prime() const { return factors_.front().prime; }
  bool is_prime_divisor(std::uint32_t p) const;

  // Arithmetic on canonical representatives in [0, n).
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((std::uint64_t(a) * b) % n_);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : n_ - a; }

  /// Bitmask over factors(): bit i set iff factors()[i].prime divides x.
  std::uint32_t prime_divisor_mask(std::uint32_t x) const;

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  Modulus(std::uint32_t n, std::vector<PrimePower> factors, bool squarefree)
      : n_(n), factors_(std::move(factors)), squarefree_(squarefree) {}

  std::uint32_t n_;
  std::vector<PrimePower> factors_;
  bool squarefree_;
};

/// Jacobi symbol (a/n) for odd n >= 1. Zero iff gcd(a,n) > 1.
int jacobi(std::uint64_t a, std::uint64_t n);

/// The natural ring surjection Z_n -> Z_m for a divisor m of n.
class ProjectionMap {
 public:
  ProjectionMap(const Modulus& source, std::uint32_t target);

  std::uint32_t source() const { return n_; }
  std::uint32_t target() const { return m_; }

  /// Applies the map to one residue. Throws if x is out of range for Z_n.
  std::uint32_t operator()(std::uint32_t x) const;

 private:
  std::uint32_t n_;
  std::uint32_t m_;
};

/// CRT isomorphism Z_n ~ Z_m1 x Z_m2 for coprime m1*m2 = n.
class CrtIso {
 public:
  CrtIso(const Modulus& n, std::uint32_t m1, std::uint32_t m2);

  std::uint32_t m1() const { return m1_; }
  std::uint32_t m2() const { return m2_; }

  std::pair<std::uint32_t, std::uint32_t> split(std::uint32_t x) const;
  std::uint32_t combine(std::uint32_t r1, std::uint32_t r2) const;

 private:
  std::uint32_t n_, m1_, m2_;
  std::uint64_t lift_coeff_;  // m1 * (m1^-1 mod m2)
};

}  // namespace zslab
