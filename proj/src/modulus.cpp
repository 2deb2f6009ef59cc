#include "zslab/modulus.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace zslab {

Modulus Modulus::factorize(std::uint32_t n, std::uint32_t ceiling) {
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("modulus must be odd and >= 3");
  }
  if (n > ceiling) {
    throw std::invalid_argument("modulus " + std::to_string(n) +
                                " exceeds ceiling " + std::to_string(ceiling));
  }
  std::vector<PrimePower> factors;
  bool squarefree = true;
  std::uint32_t rest = n;
  for (std::uint32_t p = 3; std::uint64_t(p) * p <= rest; p += 2) {
    if (rest % p != 0) continue;
    std::uint32_t e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    factors.push_back({p, e});
    if (e > 1) squarefree = false;
  }
  if (rest > 1) factors.push_back({rest, 1});
  return Modulus(n, std::move(factors), squarefree);
}

bool Modulus::is_prime_divisor(std::uint32_t p) const {
  for (const auto& f : factors_) {
    if (f.prime == p) return true;
  }
  return false;
}

std::uint32_t Modulus::prime_divisor_mask(std::uint32_t x) const {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (x % factors_[i].prime == 0) mask |= 1u << i;
  }
  return mask;
}

// Binary Jacobi algorithm via quadratic reciprocity.
int jacobi(std::uint64_t a, std::uint64_t n) {
  if (n == 0 || n % 2 == 0) {
    throw std::invalid_argument("jacobi symbol requires odd n >= 1");
  }
  a %= n;
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      std::uint64_t r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

ProjectionMap::ProjectionMap(const Modulus& source, std::uint32_t target)
    : n_(source.value()), m_(target) {
  if (target == 0 || n_ % target != 0) {
    throw std::invalid_argument("projection target " + std::to_string(target) +
                                " does not divide " + std::to_string(n_));
  }
}

std::uint32_t ProjectionMap::operator()(std::uint32_t x) const {
  if (x >= n_) {
    throw std::invalid_argument("residue " + std::to_string(x) +
                                " out of range for modulus " +
                                std::to_string(n_));
  }
  return x % m_;
}

namespace {

// Inverse of a mod m for coprime a, m (extended Euclid).
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  std::int64_t inv = old_s % static_cast<std::int64_t>(m);
  if (inv < 0) inv += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(inv);
}

}  // namespace

CrtIso::CrtIso(const Modulus& n, std::uint32_t m1, std::uint32_t m2)
    : n_(n.value()), m1_(m1), m2_(m2) {
  if (m1 < 1 || m2 < 1 || std::uint64_t(m1) * m2 != n_) {
    throw std::invalid_argument("CRT factors must multiply to the modulus");
  }
  if (std::gcd(m1, m2) != 1) {
    throw std::invalid_argument("CRT factors must be coprime");
  }
  lift_coeff_ = std::uint64_t(m1_) * mod_inverse(m1_, m2_ == 1 ? 1 : m2_);
}

std::pair<std::uint32_t, std::uint32_t> CrtIso::split(std::uint32_t x) const {
  if (x >= n_) {
    throw std::invalid_argument("residue out of range for CRT split");
  }
  return {x % m1_, x % m2_};
}

std::uint32_t CrtIso::combine(std::uint32_t r1, std::uint32_t r2) const {
  if (r1 >= m1_ || r2 >= m2_) {
    throw std::invalid_argument("residues out of range for CRT combine");
  }
  // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
  std::uint64_t diff = (std::uint64_t(r2) + m2_ - (r1 % m2_)) % m2_;
  std::uint64_t x = r1 + (diff * lift_coeff_) % (std::uint64_t(m1_) * m2_);
  return static_cast<std::uint32_t>(x % n_);
}

}  // namespace zslab
