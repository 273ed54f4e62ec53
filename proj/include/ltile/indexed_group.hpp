#pragma once

// Index-level arithmetic on a finite Abelian group: elements are the
// mixed-radix indices 0..|G|-1 of AbelianGroup. Used by the verifier and the
// search hot loop, where GroupElement vectors would be too slow.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ltile/group.hpp"

namespace ltile {

class IndexedGroup {
 public:
  using Index = std::uint32_t;

  explicit IndexedGroup(const AbelianGroup& g) : group_(g) {
    if (g.order() > (1ull << 31)) throw std::length_error("IndexedGroup: group too large for indexed arithmetic");
    n_ = static_cast<Index>(g.order());
    for (auto mod : g.moduli()) radix_.push_back(static_cast<Index>(mod));
    // one factor: plain modular arithmetic on the index
    single_ = radix_.size() <= 1;
    if (!single_) {
      const std::size_t k = radix_.size();
      digits_.resize(static_cast<std::size_t>(n_) * k);
      for (Index x = 0; x < n_; ++x) {
        Index rest = x;
        for (std::size_t i = k; i-- > 0;) {
          digits_[static_cast<std::size_t>(x) * k + i] = rest % radix_[i];
          rest /= radix_[i];
        }
      }
    }
  }

  const AbelianGroup& group() const { return group_; }
  Index order() const { return n_; }

  Index add(Index x, Index y) const {
    if (single_) {
      Index s = x + y;
      return s >= n_ ? s - n_ : s;
    }
    const std::size_t k = radix_.size();
    const Index* dx = &digits_[static_cast<std::size_t>(x) * k];
    const Index* dy = &digits_[static_cast<std::size_t>(y) * k];
    Index idx = 0;
    for (std::size_t i = 0; i < k; ++i) {
      Index d = dx[i] + dy[i];
      if (d >= radix_[i]) d -= radix_[i];
      idx = idx * radix_[i] + d;
    }
    return idx;
  }

  Index neg(Index x) const {
    if (single_) return x == 0 ? 0 : n_ - x;
    const std::size_t k = radix_.size();
    const Index* dx = &digits_[static_cast<std::size_t>(x) * k];
    Index idx = 0;
    for (std::size_t i = 0; i < k; ++i) idx = idx * radix_[i] + (dx[i] == 0 ? 0 : radix_[i] - dx[i]);
    return idx;
  }

  Index mul(std::int64_t a, Index x) const {
    if (single_) {
      std::int64_t am = a % static_cast<std::int64_t>(n_);
      if (am < 0) am += n_;
      return static_cast<Index>(static_cast<std::uint64_t>(am) * x % n_);
    }
    const std::size_t k = radix_.size();
    const Index* dx = &digits_[static_cast<std::size_t>(x) * k];
    Index idx = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const auto r = static_cast<std::int64_t>(radix_[i]);
      std::int64_t am = a % r;
      if (am < 0) am += r;
      idx = idx * radix_[i] + static_cast<Index>(static_cast<std::uint64_t>(am) * dx[i] % radix_[i]);
    }
    return idx;
  }

  Index index_of(const GroupElement& e) const { return static_cast<Index>(group_.index_of(e)); }
  GroupElement element_at(Index i) const { return group_.element_at(i); }

 private:
  AbelianGroup group_;
  Index n_ = 1;
  bool single_ = true;
  std::vector<Index> radix_;
  std::vector<Index> digits_;
};

}  // namespace ltile
