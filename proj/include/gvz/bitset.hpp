#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace gvz {

/// Fixed-size dynamic bitset used for element sets of a group.
/// Comparison operators give a deterministic total order so bitsets can key
/// ordered containers.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  bool operator==(const Bitset&) const = default;
  auto operator<=>(const Bitset& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    return w_ <=> o.w_;
  }

  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  Bitset operator&(const Bitset& o) const {
    Bitset r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }

  std::vector<int> to_vector() const {
    std::vector<int> v;
    v.reserve(count());
    for (int i = 0; i < n_; ++i)
      if (test(i)) v.push_back(i);
    return v;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace gvz
