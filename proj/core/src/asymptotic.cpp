#include "distspec/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "distspec/errors.hpp"

namespace distspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxIterations = 200;

/// Cumulants 1-4 of V under the law tilted by exp(theta V), and the log
/// partition function log E exp(theta V).
struct Tilt {
  double log_mgf = 0.0;
  double k1 = 0.0, k2 = 0.0, k3 = 0.0, k4 = 0.0;
};

Tilt tilt(const DistanceDistribution& dist, double theta) {
  const auto& v = dist.values();
  const auto& p = dist.probs();
  std::vector<double> w(v.size());
  double top = -kInf;
  for (std::size_t k = 0; k < v.size(); ++k) {
    w[k] = std::log(p[k]) + theta * v[k];
    top = std::max(top, w[k]);
  }
  long double z = 0.0L;
  for (double& x : w) z += x = std::exp(x - top);
  Tilt t;
  t.log_mgf = top + std::log(static_cast<double>(z));
  long double mean = 0.0L;
  for (std::size_t k = 0; k < v.size(); ++k) mean += w[k] / z * v[k];
  long double c2 = 0.0L, c3 = 0.0L, c4 = 0.0L;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const long double pi = w[k] / z;
    const long double dv = v[k] - mean;
    c2 += pi * dv * dv;
    c3 += pi * dv * dv * dv;
    c4 += pi * dv * dv * dv * dv;
  }
  t.k1 = static_cast<double>(mean);
  t.k2 = static_cast<double>(c2);
  t.k3 = static_cast<double>(c3);
  t.k4 = static_cast<double>(c4 - 3.0L * c2 * c2);
  return t;
}

/// theta with phi'(theta) = a, for a strictly inside the normalised range.
/// Newton steps, falling back to bisection when a step leaves the bracket.
double solve_tilt(const DistanceDistribution& dist, double a, double lo, double hi) {
  const double s = static_cast<double>(dist.scale_n());
  auto slope = [&](double th) { return tilt(dist, th).k1 / s; };
  int expansions = 0;
  while (slope(lo) > a) {
    hi = std::min(hi, lo);
    lo = lo * 2.0 - 1.0;
    if (++expansions > 60) throw NonConvergence("cannot bracket the tilt for a = " + std::to_string(a));
  }
  while (slope(hi) < a) {
    lo = std::max(lo, hi);
    hi = hi * 2.0 + 1.0;
    if (++expansions > 60) throw NonConvergence("cannot bracket the tilt for a = " + std::to_string(a));
  }
  double th = std::clamp(0.0, lo, hi);
  for (int it = 0; it < kMaxIterations; ++it) {
    const Tilt t = tilt(dist, th);
    const double f = t.k1 / s - a;
    if (std::abs(f) <= 1e-15 * std::max(1.0, std::abs(a))) return th;
    if (f > 0) hi = th;
    else lo = th;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(th))) return th;
    const double d2 = t.k2 / s;
    double next = d2 > 0.0 ? th - f / d2 : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    th = next;
  }
  throw NonConvergence("tilt equation phi'(theta) = " + std::to_string(a) + " did not converge in " +
                       std::to_string(kMaxIterations) + " iterations; bracket [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
}

}  // namespace

DistanceDistribution::DistanceDistribution(std::vector<double> values, std::vector<double> probs, std::size_t scale_n)
    : scale_(scale_n) {
  if (scale_n < 1) throw InvalidArgument("scale_n must be at least 1");
  if (values.size() != probs.size()) throw InvalidArgument("values and probs differ in length");
  if (values.empty()) throw InvalidArgument("distribution is empty");
  double total = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) throw InvalidArgument("distance values must be finite");
    if (!(probs[k] >= 0.0) || !std::isfinite(probs[k])) throw InvalidArgument("probabilities must be nonnegative");
    total += probs[k];
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("probabilities sum to " + std::to_string(total));
  auto sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("distance values must be distinct");
  for (std::size_t k = 0; k < values.size(); ++k)
    if (probs[k] > 0.0) {
      values_.push_back(values[k]);
      probs_.push_back(probs[k]);
    }
}

double DistanceDistribution::mean() const {
  long double m = 0.0L;
  for (std::size_t k = 0; k < values_.size(); ++k) m += static_cast<long double>(probs_[k]) * values_[k];
  return static_cast<double>(m) / static_cast<double>(scale_);
}

double DistanceDistribution::min_value() const {
  return *std::min_element(values_.begin(), values_.end()) / static_cast<double>(scale_);
}

double DistanceDistribution::max_value() const {
  return *std::max_element(values_.begin(), values_.end()) / static_cast<double>(scale_);
}

DistanceDistribution distance_distribution(const CodeSpace& space, const SimplexPoint& p) {
  if (p.size() != space.size()) throw InvalidArgument("distribution size does not match the space");
  std::map<double, long double> law;
  const auto support = p.support();
  for (Index i : support)
    for (Index j : support) law[space.block_distance(i, j)] += static_cast<long double>(p[i]) * p[j];
  std::vector<double> values, probs;
  long double total = 0.0L;
  for (const auto& [v, m] : law) total += m;
  for (const auto& [v, m] : law) {
    values.push_back(v);
    probs.push_back(static_cast<double>(m / total));
  }
  return DistanceDistribution(std::move(values), std::move(probs), space.space().n());
}

double finite_rate(std::size_t M, std::size_t n) {
  if (M < 1 || n < 1) throw InvalidArgument("M and n must be at least 1");
  return std::log(static_cast<double>(M)) / static_cast<double>(n);
}

double cumulant_gen(const DistanceDistribution& dist, double theta, int order) {
  if (order < 0 || order > 4) throw InvalidArgument("order must lie in 0..4");
  const Tilt t = tilt(dist, theta);
  const double s = static_cast<double>(dist.scale_n());
  switch (order) {
    case 0: return t.log_mgf / s;
    case 1: return t.k1 / s;
    case 2: return t.k2 / s;
    case 3: return t.k3 / s;
    default: return t.k4 / s;
  }
}

double rate_function_I(const DistanceDistribution& dist, double a) {
  const double lo = dist.min_value();
  const double hi = dist.max_value();
  const double s = static_cast<double>(dist.scale_n());
  if (a < lo || a > hi) return kInf;
  // At an end of the range the supremum is approached as theta -> -+inf.
  auto end_rate = [&](double v) {
    for (std::size_t k = 0; k < dist.values().size(); ++k)
      if (dist.values()[k] / s == v) return std::max(0.0, -std::log(dist.probs()[k]) / s);
    return kInf;
  };
  if (a == lo) return end_rate(lo);
  if (a == hi) return end_rate(hi);
  const double th = solve_tilt(dist, a, -1.0, 1.0);
  return std::max(0.0, a * th - cumulant_gen(dist, th, 0));
}

double J_function(const DistanceDistribution& dist, double delta) {
  return delta < dist.mean() ? rate_function_I(dist, delta) : 0.0;
}

ChernoffReport chernoff_check(const CodeSpace& space, const SimplexPoint& p, const Threshold& delta) {
  const std::size_t n = space.space().n();
  // (1/n) mu < delta  <=>  mu < n delta.
  const Threshold scaled = delta.exact() ? Threshold::rational(static_cast<std::int64_t>(n) * delta.exact()->num,
                                                               delta.exact()->den)
                                         : Threshold::real(static_cast<double>(n) * delta.value());
  long double prob = 0.0L;
  const auto support = p.support();
  for (Index i : support)
    for (Index j : support)
      if (scaled.exceeds(space.block_distance(i, j))) prob += static_cast<long double>(p[i]) * p[j];
  ChernoffReport r;
  r.probability = static_cast<double>(prob);
  r.J = J_function(distance_distribution(space, p), delta.value());
  r.bound = std::exp(-static_cast<double>(n) * r.J);
  r.holds = r.probability <= r.bound + 1e-12;
  return r;
}

double binary_divergence(double a, double b) {
  if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0) throw InvalidArgument("divergence arguments must lie in [0, 1]");
  auto term = [](double x, double y) {
    if (x == 0.0) return 0.0;
    if (y == 0.0) return kInf;
    return x * std::log(x / y);
  };
  return term(a, b) + term(1.0 - a, 1.0 - b);
}

double corollary2_bound(double delta, int q) {
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  if (q < 2) throw InvalidArgument("alphabet size must be at least 2");
  const double b = static_cast<double>(q - 1) / q;
  return delta < b ? binary_divergence(delta, b) : 0.0;
}

RateReport second_order_upper(const DistanceDistribution& dist, double delta, std::size_t n,
                              bool optimizer_certified) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  RateReport r;
  r.b = dist.mean();
  r.optimizer_certified = optimizer_certified;
  r.J = J_function(dist, delta);
  if (!(r.J > 0.0)) throw PreconditionViolated("J(delta) = 0: delta is not below the mean distance");
  if (!(delta > dist.min_value()))
    throw PreconditionViolated("delta is at or below the smallest distance; the optimal tilt is infinite");
  r.I = rate_function_I(dist, delta);

  // C'(theta) = n (delta - phi'(-theta)); search theta in [0, 50] first.
  r.theta_star = -solve_tilt(dist, delta, -50.0, 0.0);
  const double nn = static_cast<double>(n);
  r.stationarity_residual = nn * std::abs(delta - cumulant_gen(dist, -r.theta_star, 1));
  if (!(r.stationarity_residual < 1e-8))
    throw NonConvergence("stationarity residual " + std::to_string(r.stationarity_residual) + " exceeds 1e-8");
  r.phi2 = cumulant_gen(dist, -r.theta_star, 2);
  r.phi4 = cumulant_gen(dist, -r.theta_star, 4);

  const double ratio = r.phi4 / (r.phi2 * r.phi2);
  const double inner = 4.0 / nn * ratio + 12.0;
  if (!(inner > 0.0)) {
    r.out_of_model = true;
    return r;
  }
  r.second_order_rhs =
      r.I + 4.0 / std::sqrt(nn) * (ratio / nn + 3.0) * std::sqrt(r.phi2) + std::log(inner) / nn;
  return r;
}

}  // namespace distspec
