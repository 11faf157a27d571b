#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace distspec {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Fixed-size packed bit vector used for confusability rows and search sets.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_(words_for(bits), 0) {}

  static Bitset full(std::size_t bits) {
    Bitset b(bits);
    for (auto& w : b.words_) w = ~Word{0};
    b.trim();
    return b;
  }

  static Bitset from_words(std::span<const Word> words, std::size_t bits) {
    Bitset b(bits);
    for (std::size_t k = 0; k < b.words_.size(); ++k) b.words_[k] = words[k];
    b.trim();
    return b;
  }

  std::size_t size() const { return bits_; }
  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

  bool none() const {
    for (Word w : words_)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Index of the lowest set bit, or size() when empty.
  std::size_t first() const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k]) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return bits_;
  }

  Bitset& operator&=(std::span<const Word> other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other[k];
    return *this;
  }
  Bitset& operator&=(const Bitset& other) { return *this &= other.words(); }
  Bitset& operator|=(const Bitset& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
    return *this;
  }
  /// this &= ~other
  Bitset& subtract(std::span<const Word> other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~other[k];
    return *this;
  }
  Bitset& subtract(const Bitset& other) { return subtract(other.words()); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      Word w = words_[k];
      while (w) {
        f(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  void trim() {
    if (bits_ % kWordBits != 0 && !words_.empty())
      words_.back() &= (Word{1} << (bits_ % kWordBits)) - 1;
  }

  std::size_t bits_ = 0;
  std::vector<Word> words_;
};

/// popcount(a & b) over equally sized word spans.
inline std::size_t intersection_count(std::span<const Word> a, std::span<const Word> b) {
  std::size_t c = 0;
  for (std::size_t k = 0; k < a.size(); ++k) c += static_cast<std::size_t>(std::popcount(a[k] & b[k]));
  return c;
}

}  // namespace distspec
