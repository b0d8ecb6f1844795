#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmlab {

// Packed bit vector over 64-bit words. Bits beyond size() in the last word
// are kept zero at all times; the word-level algorithms below rely on it.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }
  std::size_t word_count() const { return words_.size(); }
  const std::uint64_t* data() const { return words_.data(); }
  std::uint64_t* data() { return words_.data(); }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool v) {
    std::uint64_t mask = 1ull << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  void flip(std::size_t i) { words_[i >> 6] ^= 1ull << (i & 63); }

  void clear() { words_.assign(words_.size(), 0); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool none() const {
    for (std::uint64_t w : words_)
      if (w) return false;
    return true;
  }

  bool any() const { return !none(); }

  BitVec& operator^=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  BitVec& operator&=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitVec& operator|=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }

  bool operator==(const BitVec& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }
  bool operator!=(const BitVec& o) const { return !(*this == o); }

  // a AND NOT b, used for support-subset tests.
  BitVec and_not(const BitVec& o) const {
    BitVec r(nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & ~o.words_[i];
    return r;
  }

  std::size_t count_xor(const BitVec& o) const {  // Hamming distance without a temporary
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] ^ o.words_[i]));
    return c;
  }

  // Returns g with g[x] = (*this)[x ^ y]. Requires size() to be a power of
  // two and y < size(); then x -> x^y permutes indices within the vector and,
  // for the low six bits of y, within each word (delta swaps).
  BitVec permute_xor(std::size_t y) const {
    BitVec out(nbits_);
    std::size_t word_xor = y >> 6;
    unsigned low = static_cast<unsigned>(y & 63);
    for (std::size_t i = 0; i < words_.size(); ++i)
      out.words_[i] = word_permute_xor(words_[i ^ word_xor], low);
    return out;
  }

  std::string to_hex() const {
    // Fixed width ceil(size()/4) digits, most significant nibble first;
    // bit i of the vector is the 2^i bit of the encoded integer.
    std::size_t digits = (nbits_ + 3) / 4;
    std::string s(digits, '0');
    for (std::size_t d = 0; d < digits; ++d) {
      unsigned nib = (words_[(d * 4) >> 6] >> ((d * 4) & 63)) & 0xfu;
      s[digits - 1 - d] = "0123456789abcdef"[nib];
    }
    return s;
  }

  static BitVec from_hex(std::size_t nbits, const std::string& hex) {
    BitVec v(nbits);
    std::size_t digits = (nbits + 3) / 4;
    if (hex.size() != digits) throw std::invalid_argument("BitVec::from_hex: expected " + std::to_string(digits) + " hex digits");
    for (std::size_t d = 0; d < digits; ++d) {
      char c = hex[digits - 1 - d];
      unsigned nib;
      if (c >= '0' && c <= '9')
        nib = static_cast<unsigned>(c - '0');
      else if (c >= 'a' && c <= 'f')
        nib = static_cast<unsigned>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F')
        nib = static_cast<unsigned>(c - 'A' + 10);
      else
        throw std::invalid_argument("BitVec::from_hex: bad digit");
      v.words_[(d * 4) >> 6] |= static_cast<std::uint64_t>(nib) << ((d * 4) & 63);
    }
    // Reject bits beyond nbits.
    if (nbits & 63) {
      std::uint64_t junk = v.words_.back() & (~0ull << (nbits & 63));
      if (junk) throw std::invalid_argument("BitVec::from_hex: bits beyond length");
    }
    return v;
  }

 private:
  // Permute bits of one word by j -> j^low.
  static std::uint64_t word_permute_xor(std::uint64_t w, unsigned low) {
    if (low & 1) w = ((w >> 1) & 0x5555555555555555ull) | ((w & 0x5555555555555555ull) << 1);
    if (low & 2) w = ((w >> 2) & 0x3333333333333333ull) | ((w & 0x3333333333333333ull) << 2);
    if (low & 4) w = ((w >> 4) & 0x0f0f0f0f0f0f0f0full) | ((w & 0x0f0f0f0f0f0f0f0full) << 4);
    if (low & 8) w = ((w >> 8) & 0x00ff00ff00ff00ffull) | ((w & 0x00ff00ff00ff00ffull) << 8);
    if (low & 16) w = ((w >> 16) & 0x0000ffff0000ffffull) | ((w & 0x0000ffff0000ffffull) << 16);
    if (low & 32) w = (w >> 32) | (w << 32);
    return w;
  }

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace rmlab
