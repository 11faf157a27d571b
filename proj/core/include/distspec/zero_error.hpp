#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "distspec/exact_oracle.hpp"
#include "distspec/spectrum_qp.hpp"

namespace distspec {

/// Discrete memoryless channel P(y|x).
class ChannelModel {
 public:
  /// Rows must be nonnegative and sum to 1 within 1e-9. An entry counts as
  /// positive when it exceeds 1e-12.
  ChannelModel(std::vector<std::string> input_labels, std::vector<std::string> output_labels,
               std::vector<std::vector<double>> matrix);
  /// As above, with the positivity pattern given exactly (from rational
  /// entries) instead of thresholded.
  ChannelModel(std::vector<std::string> input_labels, std::vector<std::string> output_labels,
               std::vector<std::vector<double>> matrix, std::vector<std::vector<bool>> positive);

  /// Header row of output labels, then one row per input. A leading input
  /// label column is optional. Entries may be decimals or fractions "p/q";
  /// if every entry is a fraction or integer, positivity is decided exactly.
  static ChannelModel parse_csv(std::string_view text);

  std::size_t inputs() const { return inputs_.size(); }
  std::size_t outputs() const { return outputs_.size(); }
  const std::vector<std::string>& input_labels() const { return inputs_; }
  const std::vector<std::string>& output_labels() const { return outputs_; }
  const std::vector<std::vector<double>>& matrix() const { return matrix_; }
  bool positive(std::size_t x, std::size_t y) const { return positive_[x][y]; }
  bool exact_support() const { return exact_; }

 private:
  void validate();

  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<std::vector<double>> matrix_;
  std::vector<std::vector<bool>> positive_;
  bool exact_ = false;
};

/// Single-letter measure: 0 when two inputs share an output, else 1.
AdditivePerLetter confusability_from_channel(const ChannelModel& ch);

/// Block space of n channel uses with the additive 0/1 measure; block
/// distance < 1 exactly when every coordinate pair is confusable.
CodeSpace product_space(const ChannelModel& ch, std::size_t n,
                        std::size_t enumeration_cap = kDefaultEnumerationCap);
ConfusabilityMatrix product_confusability(const ChannelModel& ch, std::size_t n,
                                          std::size_t enumeration_cap = kDefaultEnumerationCap);

struct ZeroErrorEntry {
  std::size_t n = 0;
  std::size_t M_star = 0;
  /// (1/n) log M_star in nats.
  double rate = 0.0;
};

struct ZeroErrorReport {
  std::vector<ZeroErrorEntry> per_n;
  /// Largest rate over per_n; a lower bound on the zero-error capacity.
  double best_rate = 0.0;
  double korn = 0.0;
  /// Some n <= n_max was skipped because the product space is too large.
  bool truncated = false;
};

/// Exact M*_n(1) for n = 1..n_max.
ZeroErrorReport zero_error_lower_bound(const ChannelModel& ch, std::size_t n_max, const SearchConfig& search = {},
                                       const QpConfig& qp = {},
                                       std::size_t enumeration_cap = kDefaultEnumerationCap);

/// -log min_P Pr[X', X confusable] over single-letter distributions.
double korn_bound(const ChannelModel& ch, const QpConfig& qp = {});

}  // namespace distspec
