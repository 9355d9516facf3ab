#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "signed_spectra/errors.hpp"

namespace signed_spectra {

/// Fixed-length bit vector. Bit t carries weight 2^t when the vector is read
/// as an unsigned integer; ordering and the hex form follow that reading.
class BitVector {
public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  /// Low `size` bits of `word`; `size` may exceed 64 (upper bits are zero).
  static BitVector from_word(std::uint64_t word, std::size_t size) {
    BitVector v(size);
    if (!v.words_.empty()) {
      v.words_[0] = word;
      v.trim();
    }
    return v;
  }

  /// Parses the most-significant-nibble-first hex form produced by to_hex().
  static BitVector from_hex(std::string_view hex, std::size_t size) {
    if (hex.empty()) throw InputError("empty hex bit string");
    BitVector v(size);
    std::size_t bit = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
      const int nibble = hex_value(*it);
      if (nibble < 0) throw InputError("invalid hex digit in bit string '" + std::string(hex) + "'");
      for (int b = 0; b < 4; ++b) {
        if ((nibble >> b) & 1) {
          if (bit + b >= size) {
            throw InputError("hex bit string '" + std::string(hex) + "' exceeds " +
                             std::to_string(size) + " bits");
          }
          v.set(bit + b, true);
        }
      }
    }
    return v;
  }

  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1U; }

  void set(std::size_t i, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value) {
      words_[i / 64] |= mask;
    } else {
      words_[i / 64] &= ~mask;
    }
  }

  void flip(std::size_t i) noexcept { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool none() const noexcept {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  /// At least one digit; exactly ceil(size/4) digits otherwise.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t digits = size_ == 0 ? 1 : (size_ + 3) / 4;
    std::string out(digits, '0');
    for (std::size_t d = 0; d < digits; ++d) {
      unsigned nibble = 0;
      for (std::size_t b = 0; b < 4; ++b) {
        const std::size_t i = d * 4 + b;
        if (i < size_ && test(i)) nibble |= 1U << b;
      }
      out[digits - 1 - d] = kDigits[nibble];
    }
    return out;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

  /// Shorter vectors first, then numeric value.
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    for (std::size_t w = a.words_.size(); w-- > 0;) {
      if (auto c = a.words_[w] <=> b.words_[w]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

private:
  static int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  }

  void trim() noexcept {
    if (size_ % 64 != 0) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace signed_spectra
