#ifndef FO2CIS_BITSET_HPP
#define FO2CIS_BITSET_HPP

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace fo2cis {

// Fixed-width bit vector. All binary operations require equal widths; bits
// beyond width() are kept zero so whole-word comparisons stay valid.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int width) : width_(width), words_((width + 63) / 64, 0) {}

  int width() const { return width_; }
  int n_words() const { return static_cast<int>(words_.size()); }
  uint64_t word(int w) const { return words_[w]; }
  uint64_t& word(int w) { return words_[w]; }

  bool test(int i) const {
    assert(i >= 0 && i < width_);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }
  void set(int i) {
    assert(i >= 0 && i < width_);
    words_[i >> 6] |= uint64_t{1} << (i & 63);
  }
  void reset(int i) {
    assert(i >= 0 && i < width_);
    words_[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }
  void assign(int i, bool v) { v ? set(i) : reset(i); }

  void clear() {
    for (auto& w : words_) w = 0;
  }
  void set_all() {
    for (auto& w : words_) w = ~uint64_t{0};
    trim();
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  // index of the lowest set bit, -1 when empty
  int find_first() const {
    for (size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return static_cast<int>(w * 64) + std::countr_zero(words_[w]);
    return -1;
  }

  bool intersects(const Bitset& o) const {
    assert(width_ == o.width_);
    for (size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }
  bool is_subset_of(const Bitset& o) const {
    assert(width_ == o.width_);
    for (size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }

  Bitset& operator&=(const Bitset& o) {
    assert(width_ == o.width_);
    for (size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    assert(width_ == o.width_);
    for (size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  // set difference
  Bitset& operator-=(const Bitset& o) {
    assert(width_ == o.width_);
    for (size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    return *this;
  }

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  Bitset complement() const {
    Bitset r(width_);
    for (size_t w = 0; w < words_.size(); ++w) r.words_[w] = ~words_[w];
    r.trim();
    return r;
  }

  bool operator==(const Bitset& o) const = default;

  // calls f(i) for every set bit in ascending order
  template <class F>
  void for_each(F f) const {
    for (size_t w = 0; w < words_.size(); ++w) {
      uint64_t bits = words_[w];
      while (bits) {
        int i = std::countr_zero(bits);
        f(static_cast<int>(w * 64) + i);
        bits &= bits - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> v;
    v.reserve(count());
    for_each([&](int i) { v.push_back(i); });
    return v;
  }

 private:
  void trim() {
    if (width_ & 63) words_.back() &= (uint64_t{1} << (width_ & 63)) - 1;
  }

  int width_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace fo2cis

#endif
