#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "distspec/space.hpp"
#include "distspec/spectrum_qp.hpp"
#include "distspec/threshold.hpp"

namespace distspec {

/// Law of a block distance mu(X', X): distinct attained values with their
/// probabilities. Normalised quantities divide the values by scale_n.
class DistanceDistribution {
 public:
  /// Values finite and distinct, probabilities nonnegative summing to 1
  /// within 1e-12, scale_n >= 1. Zero-probability values are dropped.
  DistanceDistribution(std::vector<double> values, std::vector<double> probs, std::size_t scale_n = 1);

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t scale_n() const { return scale_; }
  /// Normalised mean, smallest and largest value.
  double mean() const;
  double min_value() const;
  double max_value() const;

 private:
  std::vector<double> values_;
  std::vector<double> probs_;
  std::size_t scale_;
};

/// Law of the ordered block distance mu(X', X) for X', X independent ~ p.
DistanceDistribution distance_distribution(const CodeSpace& space, const SimplexPoint& p);

/// (1/n) log M in nats.
double finite_rate(std::size_t M, std::size_t n);

/// phi(theta) = (1/scale_n) log E exp(theta V) for order 0, and its
/// derivatives for orders 1-4 from the cumulants of the tilted law.
double cumulant_gen(const DistanceDistribution& dist, double theta, int order);

/// sup_theta { a theta - phi(theta) }; +infinity outside the normalised
/// range of values.
double rate_function_I(const DistanceDistribution& dist, double a);

/// I(delta) below the normalised mean, 0 otherwise.
double J_function(const DistanceDistribution& dist, double delta);

struct ChernoffReport {
  /// Pr[(1/n) mu(X', X) < delta], by enumeration.
  double probability = 0.0;
  /// exp(-n J(delta)).
  double bound = 1.0;
  double J = 0.0;
  bool holds = false;
};

ChernoffReport chernoff_check(const CodeSpace& space, const SimplexPoint& p, const Threshold& delta);

/// D(delta || (Q-1)/Q) for 0 < delta < (Q-1)/Q, else 0. Nats.
double corollary2_bound(double delta, int q);

/// Binary divergence D(a || b) in nats.
double binary_divergence(double a, double b);

struct RateReport {
  double b = 0.0;
  double theta_star = 0.0;
  double I = 0.0;
  double J = 0.0;
  double phi2 = 0.0;
  double phi4 = 0.0;
  std::optional<double> second_order_rhs;
  double stationarity_residual = 0.0;
  /// Caller's assertion that dist comes from the maximiser of J; the
  /// right-hand side bounds the optimal rate only then.
  bool optimizer_certified = false;
  /// The logarithm's argument was not positive.
  bool out_of_model = false;
};

/// Minimises C(theta) = n (theta delta + phi(-theta)) over theta >= 0 and
/// evaluates
///   I + (4/sqrt n) [(1/n) r + 3] sqrt(phi'') + (1/n) log((4/n) r + 12),
/// r = phi''''/phi''^2 at -theta*. Requires J(delta) > 0 and delta above the
/// smallest value.
RateReport second_order_upper(const DistanceDistribution& dist, double delta, std::size_t n,
                              bool optimizer_certified = false);

}  // namespace distspec
