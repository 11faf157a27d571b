#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "distspec/bitset.hpp"
#include "distspec/space.hpp"
#include "distspec/threshold.hpp"

namespace distspec {

/// A pair whose distance lies within 1e-12 of d under inexact arithmetic.
struct BoundaryWarning {
  Index i;
  Index j;
  double distance;
};

/// Symmetric N x N boolean relation "symmetrized distance < d", stored as
/// packed rows. The diagonal is always set.
class ConfusabilityMatrix {
 public:
  /// Requires an enumerable space and d > mu_min.
  static ConfusabilityMatrix build(const CodeSpace& space, const Threshold& d);

  /// From an explicit off-diagonal adjacency; the diagonal is added and the
  /// relation is symmetrised (i~j if either entry is set).
  static ConfusabilityMatrix from_adjacency(const std::vector<std::vector<bool>>& adjacency);
  static ConfusabilityMatrix from_edges(std::size_t n, const std::vector<std::pair<Index, Index>>& edges);

  std::size_t size() const { return n_; }
  bool test(Index i, Index j) const { return (data_[i * stride_ + j / kWordBits] >> (j % kWordBits)) & 1U; }
  std::span<const Word> row(Index i) const { return {data_.data() + i * stride_, stride_}; }
  std::size_t stride() const { return stride_; }

  const Threshold& threshold() const { return d_; }
  bool exact_arithmetic() const { return exact_; }
  const std::vector<BoundaryWarning>& warnings() const { return warnings_; }
  std::size_t warning_count() const { return warning_count_; }

  /// Number of confusable partners including the vertex itself.
  std::size_t row_count(Index i) const;

  friend bool operator==(const ConfusabilityMatrix& a, const ConfusabilityMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  ConfusabilityMatrix(std::size_t n, Threshold d);
  void set(Index i, Index j) { data_[i * stride_ + j / kWordBits] |= Word{1} << (j % kWordBits); }

  std::size_t n_;
  std::size_t stride_;
  std::vector<Word> data_;
  Threshold d_;
  bool exact_ = true;
  std::vector<BoundaryWarning> warnings_;
  std::size_t warning_count_ = 0;
};

}  // namespace distspec
