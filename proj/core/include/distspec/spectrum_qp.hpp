#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "distspec/confusability.hpp"
#include "distspec/exact_oracle.hpp"
#include "distspec/space.hpp"

namespace distspec {

/// A probability vector over the N words of a space.
class SimplexPoint {
 public:
  static SimplexPoint uniform(std::size_t n);
  static SimplexPoint uniform_on(std::size_t n, const std::vector<Index>& support);
  /// Entries must be nonnegative and sum to 1 within 1e-12.
  static SimplexPoint from_probabilities(std::vector<double> p);
  /// Nonnegative weights with a positive sum, rescaled to sum to 1.
  static SimplexPoint normalized(std::vector<double> weights);

  std::size_t size() const { return p_.size(); }
  double operator[](Index i) const { return p_[i]; }
  const std::vector<double>& values() const { return p_; }
  std::vector<Index> support() const;

 private:
  explicit SimplexPoint(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

/// p^T A p: the probability that two independent draws from P are confusable.
double distance_spectrum(const SimplexPoint& p, const ConfusabilityMatrix& conf);

struct QpConfig {
  /// Total starts; the first is the barycenter.
  std::size_t restarts = 32;
  std::size_t max_iters = 100'000;
  double step_tolerance = 1e-10;
  std::uint64_t seed = 0;
  /// Run the exact oracle to certify the result when N is at most this.
  std::size_t certify_max_vertices = 4096;
  std::uint64_t certify_budget = 10'000'000;
};

struct SpectrumResult {
  double value = 1.0;
  SimplexPoint distribution = SimplexPoint::uniform(1);
  /// 1 / value, +infinity when value is 0.
  double reciprocal = 1.0;
  /// Best value after each restart.
  std::vector<double> best_history;
  /// Set when the oracle ran: reciprocal matches M* exactly.
  std::optional<bool> certified;
  std::optional<std::size_t> oracle_M;

  /// Recomputes value and reciprocal from the distribution.
  static SpectrumResult evaluate(SimplexPoint p, const ConfusabilityMatrix& conf);
};

/// Minimises p^T A p over the simplex. Replicator dynamics maximise the
/// regularised complement form, each limit point is rounded to an
/// independent set, and the uniform distribution on the best set found is
/// returned.
SpectrumResult minimize_spectrum(const ConfusabilityMatrix& conf, const QpConfig& cfg = {});

struct UdBound {
  double value = 1.0;
  /// The spectrum vanished; M* is unbounded.
  bool unbounded = false;
};

/// 1 / distance_spectrum(p): a lower bound on M*.
UdBound ud_bound(const SimplexPoint& p, const ConfusabilityMatrix& conf);

struct Theorem1Report {
  std::size_t M_star = 0;
  double qp_value = 1.0;
  double qp_reciprocal = 1.0;
  bool equal = false;
};

/// Runs the oracle and the QP on the same instance and compares them.
Theorem1Report verify_theorem1(const CodeSpace& space, const Threshold& d, const QpConfig& qp = {},
                              const SearchConfig& search = {});
Theorem1Report verify_theorem1(const ConfusabilityMatrix& conf, const QpConfig& qp = {},
                              const SearchConfig& search = {});

}  // namespace distspec
