#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "distspec/confusability.hpp"
#include "distspec/space.hpp"

namespace distspec {

/// A set of codewords whose pairwise symmetrized distances were re-checked
/// when the set was constructed.
class CodeSet {
 public:
  /// Certifies against a confusability relation: no two distinct members may
  /// be confusable. The certified distance is the relation's threshold.
  static CodeSet certify(std::vector<Index> indices, const ConfusabilityMatrix& conf);
  /// Certifies against the distance itself and records the actual minimum
  /// pairwise symmetrized distance, which must not fall below d.
  static CodeSet certify(std::vector<Index> indices, const CodeSpace& space, const Threshold& d);

  const std::vector<Index>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  /// +infinity for codes with fewer than two words.
  double certified_min_distance() const { return min_distance_; }

 private:
  CodeSet(std::vector<Index> indices, double min_distance)
      : indices_(std::move(indices)), min_distance_(min_distance) {}

  std::vector<Index> indices_;
  double min_distance_ = std::numeric_limits<double>::infinity();
};

}  // namespace distspec
