#include "zslab/residue_set.hpp"

namespace zslab {

ResidueSet ResidueSet::negated() const {
  ResidueSet out(n_);
  for_each([&](std::uint32_t r) { out.insert(r == 0 ? 0 : n_ - r); });
  return out;
}

RotatedBits::RotatedBits(const ResidueSet& src)
    : n_(src.modulus()), dbl_((2 * std::size_t(n_) + 63) / 64 + 1, 0) {
  // Lay the n bits down twice: at offset 0 and at offset n.
  const auto& w = src.words_;
  for (std::size_t i = 0; i < w.size(); ++i) dbl_[i] |= w[i];
  const std::uint32_t off = n_ & 63;
  const std::size_t base = n_ >> 6;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (off == 0) {
      dbl_[base + i] |= w[i];
    } else {
      dbl_[base + i] |= w[i] << off;
      dbl_[base + i + 1] |= w[i] >> (64 - off);
    }
  }
}

void RotatedBits::or_rotated_into(ResidueSet& dst, std::uint32_t shift) const {
  // Result bit j equals source bit (j - shift mod n), which sits at position
  // j + n - shift of the doubled buffer.
  const std::uint32_t start = n_ - (shift % n_);
  const std::size_t nw = dst.words_.size();
  for (std::size_t i = 0; i < nw; ++i) {
    const std::size_t pos = start + i * 64;
    const std::size_t w = pos >> 6;
    const std::uint32_t r = pos & 63;
    std::uint64_t bits = r == 0 ? dbl_[w] : (dbl_[w] >> r) | (dbl_[w + 1] << (64 - r));
    dst.words_[i] |= bits;
  }
  const std::uint32_t tail = n_ & 63;
  if (tail != 0) dst.words_[nw - 1] &= (std::uint64_t(1) << tail) - 1;
}

void or_sumset_into(ResidueSet& dst, const ResidueSet& x, const ResidueSet& y) {
  if (x.empty() || y.empty()) return;
  if (x.count() <= y.count()) {
    RotatedBits ry(y);
    x.for_each([&](std::uint32_t m) { ry.or_rotated_into(dst, m); });
  } else {
    RotatedBits rx(x);
    y.for_each([&](std::uint32_t m) { rx.or_rotated_into(dst, m); });
  }
}

void or_sumset_into(ResidueSet& dst, const ResidueSet& x, const ResidueSet& y,
                    const RotatedBits& y_rotated) {
  if (x.empty() || y.empty()) return;
  if (x.count() <= y.count()) {
    x.for_each([&](std::uint32_t m) { y_rotated.or_rotated_into(dst, m); });
  } else {
    RotatedBits rx(x);
    y.for_each([&](std::uint32_t m) { rx.or_rotated_into(dst, m); });
  }
}

}  // namespace zslab
