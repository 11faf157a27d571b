#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "distspec/threshold.hpp"

namespace distspec {

using Index = std::size_t;
using Table = std::vector<std::vector<double>>;

inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 16;

class SymbolAlphabet {
 public:
  explicit SymbolAlphabet(std::vector<std::string> labels);
  /// Labels "0", "1", ..., "q-1".
  static SymbolAlphabet of_size(std::size_t q);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t k) const { return labels_.at(k); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
};

/// All length-n words over an alphabet. Word i has letter k at position p
/// equal to the p-th base-Q digit of i (least significant letter first).
class BlockSpace {
 public:
  BlockSpace(SymbolAlphabet alphabet, std::size_t n, std::size_t enumeration_cap = kDefaultEnumerationCap);

  const SymbolAlphabet& alphabet() const { return alphabet_; }
  std::size_t q() const { return alphabet_.size(); }
  std::size_t n() const { return n_; }
  /// Q^n, saturated at SIZE_MAX when it overflows.
  std::size_t size() const { return size_; }
  std::size_t enumeration_cap() const { return cap_; }
  bool enumerable() const { return size_ <= cap_; }
  /// Throws EnumerationCapExceeded unless enumerable().
  void require_enumerable() const;

  std::vector<std::uint32_t> letters(Index i) const;
  Index index_of(const std::vector<std::uint32_t>& letters) const;
  std::string word_label(Index i) const;

 private:
  SymbolAlphabet alphabet_;
  std::size_t n_;
  std::size_t size_;
  std::size_t cap_;
};

struct AdditivePerLetter {
  Table table;  // Q x Q, block distance is the coordinate sum
};
struct ExplicitMatrix {
  Table table;  // N x N
};
enum class FunctionalForm {
  BinaryRepresentation,  // |kappa(x) - kappa(y)| with kappa the binary value of the word
  RectilinearModGrid,    // sum of min(|a-b|, 1-|a-b|) over an m-point grid of the circle
  EuclideanGrid,         // Euclidean distance between points of an m-per-axis grid of [0,1)^n
};
struct Functional {
  FunctionalForm form;
};

using DistanceMeasure = std::variant<AdditivePerLetter, ExplicitMatrix, Functional>;

DistanceMeasure hamming_measure(std::size_t q);
const char* to_string(FunctionalForm form);
FunctionalForm functional_form_from_string(const std::string& name);

/// A block space together with a validated distance measure.
///
/// Grid forms use the alphabet size m as the resolution: letter k is the
/// point (k + 1/2) / m. Their distances are kept as integers (rectilinear in
/// units of 1/m, squared Euclidean in units of 1/m^2) so that comparisons
/// with a rational threshold are exact.
class CodeSpace {
 public:
  /// Validates that mu(u,u) equals the global minimum for every u.
  CodeSpace(BlockSpace space, DistanceMeasure measure);

  const BlockSpace& space() const { return space_; }
  const DistanceMeasure& measure() const { return measure_; }
  std::size_t size() const { return space_.size(); }
  double mu_min() const { return mu_min_; }
  bool symmetric() const { return symmetric_; }
  /// True when every distance is compared exactly (grid forms, integer tables).
  bool exact_arithmetic() const { return exact_; }

  double block_distance(Index i, Index j) const;
  double symmetrized_distance(Index i, Index j) const;
  /// symmetrized_distance(i, j) < d, with the exact predicate for grid forms.
  bool within(Index i, Index j, const Threshold& d) const;

  /// Longest possible block distance; used by the CLI for reporting.
  double max_distance() const;

 private:
  void check_index(Index i) const;
  std::int64_t grid_units(Index i, Index j) const;

  BlockSpace space_;
  DistanceMeasure measure_;
  double mu_min_ = 0.0;
  bool symmetric_ = true;
  bool exact_ = false;
};

}  // namespace distspec
