#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace defbil {

/// Dynamically sized bitset with value semantics and hashing.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool v) {
    if (v) {
      set(i);
    } else {
      reset(i);
    }
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }
  bool any() const { return !none(); }

  /// Index of the lowest set bit, or size() when empty.
  std::size_t first() const { return next(0); }
  /// Index of the lowest set bit >= from, or size() when none.
  std::size_t next(std::size_t from) const {
    if (from >= size_) return size_;
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w != 0) return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == words_.size()) return size_;
      w = words_[wi];
    }
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = first(); i < size_; i = next(i + 1)) f(i);
  }

  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// Set difference.
  Bitset& operator-=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  Bitset complement() const {
    Bitset r(size_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.trim();
    return r;
  }

  static Bitset full(std::size_t size) { return Bitset(size).complement(); }

  friend bool operator==(const Bitset&, const Bitset&) = default;
  friend bool operator<(const Bitset& a, const Bitset& b) {
    // compares by highest differing bit, so {0} < {1} < {0,1}
    for (std::size_t i = a.words_.size(); i-- > 0;)
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    return false;
  }

  std::size_t hash() const {
    std::size_t h = size_ * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return h;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

 private:
  void trim() {
    if (size_ & 63) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

/// Rectangular boolean matrix, one Bitset per row.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, Bitset(cols)) {}
  explicit BitMatrix(std::size_t n) : BitMatrix(n, n) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  bool operator()(std::size_t i, std::size_t j) const { return rows_[i].test(j); }
  void set(std::size_t i, std::size_t j, bool v = true) { rows_[i].assign(j, v); }

  const Bitset& row(std::size_t i) const { return rows_[i]; }
  Bitset& row(std::size_t i) { return rows_[i]; }

  Bitset column(std::size_t j) const {
    Bitset c(rows());
    for (std::size_t i = 0; i < rows(); ++i)
      if (rows_[i].test(j)) c.set(i);
    return c;
  }

  BitMatrix transpose() const {
    BitMatrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i) rows_[i].for_each([&](std::size_t j) { t.set(j, i); });
    return t;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (const auto& r : rows_) c += r.count();
    return c;
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<Bitset> rows_;
};

}  // namespace defbil

template <>
struct std::hash<defbil::Bitset> {
  std::size_t operator()(const defbil::Bitset& b) const { return b.hash(); }
};
