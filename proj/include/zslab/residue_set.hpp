#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace zslab {

/// A subset of Z_n stored as a bitmap. Word-parallel union/intersection and
/// cyclic-shift operations back the sumset dynamic programming.
class ResidueSet {
 public:
  ResidueSet() : n_(0) {}
  explicit ResidueSet(std::uint32_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::uint32_t modulus() const { return n_; }

  bool contains(std::uint32_t r) const {
    return (words_[r >> 6] >> (r & 63)) & 1;
  }
  bool contains_zero() const { return n_ != 0 && (words_[0] & 1); }

  void insert(std::uint32_t r) { words_[r >> 6] |= std::uint64_t(1) << (r & 63); }
  void erase(std::uint32_t r) { words_[r >> 6] &= ~(std::uint64_t(1) << (r & 63)); }
  void clear() { words_.assign(words_.size(), 0); }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::uint32_t count() const {
    std::uint32_t c = 0;
    for (auto w : words_) c += static_cast<std::uint32_t>(std::popcount(w));
    return c;
  }

  ResidueSet& operator|=(const ResidueSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ResidueSet& operator&=(const ResidueSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  bool is_subset_of(const ResidueSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const ResidueSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

  /// Visits members in ascending order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        std::uint32_t b = static_cast<std::uint32_t>(std::countr_zero(w));
        fn(static_cast<std::uint32_t>(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint32_t> to_vector() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::uint32_t r) { out.push_back(r); });
    return out;
  }

  /// { n - r : r in this }, with 0 fixed.
  ResidueSet negated() const;

  const std::uint64_t* words() const { return words_.data(); }
  std::size_t word_count() const { return words_.size(); }

 private:
  friend class RotatedBits;
  std::uint32_t n_;
  std::vector<std::uint64_t> words_;
};

/// Read-side buffer holding a residue set duplicated across 2n bits, so a
/// cyclic rotation becomes a plain 64-bit aligned read at any offset.
class RotatedBits {
 public:
  explicit RotatedBits(const ResidueSet& src);

  /// dst |= { (x + shift) mod n : x in src }.
  void or_rotated_into(ResidueSet& dst, std::uint32_t shift) const;

 private:
  std::uint32_t n_;
  std::vector<std::uint64_t> dbl_;
};

/// dst |= { a + b mod n : a in x, b in y }. Iterates over the smaller
/// operand's members, rotating the other.
void or_sumset_into(ResidueSet& dst, const ResidueSet& x, const ResidueSet& y);

/// Variant with a pre-doubled right operand (the per-term translate sets are
/// cached in this form).
void or_sumset_into(ResidueSet& dst, const ResidueSet& x, const ResidueSet& y,
                    const RotatedBits& y_rotated);

}  // namespace zslab
