#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace hyperperc {

/// Disjoint sets with union by size and path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns the surviving root, or the common root if already joined.
  /// `absorbed` receives the root that disappeared (equal to the result
  /// when nothing merged).
  std::uint32_t unite(std::uint32_t a, std::uint32_t b, std::uint32_t* absorbed = nullptr) {
    a = find(a);
    b = find(b);
    if (a != b) {
      if (size_[a] < size_[b]) std::swap(a, b);
      parent_[b] = a;
      size_[a] += size_[b];
    }
    if (absorbed != nullptr) *absorbed = b;
    return a;
  }

  std::uint32_t size_of_root(std::uint32_t root) const { return size_[root]; }
  std::size_t element_count() const { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

}  // namespace hyperperc
