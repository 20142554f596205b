#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace svcnet {

/// Runtime-sized bitset; the workhorse behind subsumption closures and the
/// output/satisfier tables the network builders intersect millions of times.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : n_(bits), w_((bits + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  void or_with(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  }

  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  bool any() const {
    for (std::uint64_t w : w_)
      if (w) return true;
    return false;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace svcnet
