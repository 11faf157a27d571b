#include "distspec/spectrum_qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "distspec/errors.hpp"

namespace distspec {

namespace {

constexpr double kSimplexTolerance = 1e-12;

template <class F>
void for_each_in_row(const ConfusabilityMatrix& conf, Index i, F&& f) {
  const auto row = conf.row(i);
  for (std::size_t k = 0; k < row.size(); ++k) {
    Word w = row[k];
    while (w) {
      f(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
}

/// (A x)_i for every i.
void confusable_mass(const ConfusabilityMatrix& conf, const std::vector<double>& x, std::vector<double>& out) {
  const std::size_t n = conf.size();
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for_each_in_row(conf, i, [&](Index j) { s += x[j]; });
    out[i] = s;
  }
}

/// Replicator dynamics for max x^T (J - A + I/2) x on the simplex.
std::vector<double> replicate(const ConfusabilityMatrix& conf, std::vector<double> x, const QpConfig& cfg) {
  const std::size_t n = conf.size();
  std::vector<double> ax(n), bx(n);
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    confusable_mass(conf, x, ax);
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
      bx[i] = 1.0 - ax[i] + 0.5 * x[i];
      total += x[i] * bx[i];
    }
    double step = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double next = x[i] * bx[i] / total;
      step = std::max(step, std::abs(next - x[i]));
      x[i] = next;
    }
    if (step < cfg.step_tolerance) break;
  }
  return x;
}

/// Tracks an independent set of the off-diagonal graph together with the
/// number of members each vertex is confusable with.
class IndependentSet {
 public:
  explicit IndependentSet(const ConfusabilityMatrix& conf)
      : conf_(conf), member_(conf.size(), false), tight_(conf.size(), 0) {}

  bool free(Index v) const { return !member_[v] && tight_[v] == 0; }
  bool contains(Index v) const { return member_[v]; }
  std::size_t tightness(Index v) const { return tight_[v]; }
  std::size_t size() const { return size_; }

  void add(Index v) {
    member_[v] = true;
    ++size_;
    for_each_in_row(conf_, v, [&](Index j) {
      if (j != v) ++tight_[j];
    });
  }
  void remove(Index v) {
    member_[v] = false;
    --size_;
    for_each_in_row(conf_, v, [&](Index j) {
      if (j != v) --tight_[j];
    });
  }
  void extend() {
    for (Index v = 0; v < conf_.size(); ++v)
      if (free(v)) add(v);
  }
  std::vector<Index> members() const {
    std::vector<Index> out;
    for (Index v = 0; v < conf_.size(); ++v)
      if (member_[v]) out.push_back(v);
    return out;
  }

  /// Replaces one member by two non-confusable outsiders whose only
  /// conflict is that member, until no such swap exists.
  void improve() {
    const std::size_t n = conf_.size();
    bool changed = true;
    while (changed) {
      changed = false;
      for (Index x = 0; x < n && !changed; ++x) {
        if (!member_[x]) continue;
        std::vector<Index> solo;
        for_each_in_row(conf_, x, [&](Index j) {
          if (j != x && !member_[j] && tight_[j] == 1) solo.push_back(j);
        });
        for (std::size_t a = 0; a < solo.size() && !changed; ++a)
          for (std::size_t b = a + 1; b < solo.size() && !changed; ++b)
            if (!conf_.test(solo[a], solo[b])) {
              remove(x);
              add(solo[a]);
              add(solo[b]);
              extend();
              changed = true;
            }
      }
    }
  }

 private:
  const ConfusabilityMatrix& conf_;
  std::vector<bool> member_;
  std::vector<std::size_t> tight_;
  std::size_t size_ = 0;
};

/// Support of x, heaviest first, greedily repaired to an independent set,
/// then extended and locally improved.
std::vector<Index> round_to_code(const ConfusabilityMatrix& conf, const std::vector<double>& x) {
  const double top = *std::max_element(x.begin(), x.end());
  std::vector<Index> support;
  for (Index i = 0; i < x.size(); ++i)
    if (x[i] >= 1e-3 * top) support.push_back(i);
  std::stable_sort(support.begin(), support.end(), [&](Index a, Index b) { return x[a] > x[b]; });
  IndependentSet set(conf);
  for (Index v : support)
    if (set.free(v)) set.add(v);
  set.extend();
  set.improve();
  return set.members();
}

std::vector<double> random_start(std::size_t n, std::uint64_t seed, std::uint64_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), static_cast<std::uint32_t>(restart >> 32)};
  std::mt19937_64 rng(seq);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> x(n);
  double total = 0.0;
  for (auto& v : x) total += v = expo(rng) + 1e-9;
  for (auto& v : x) v /= total;
  return x;
}

}  // namespace

SimplexPoint SimplexPoint::uniform(std::size_t n) {
  if (n == 0) throw InvalidArgument("distribution needs at least one point");
  return SimplexPoint(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

SimplexPoint SimplexPoint::uniform_on(std::size_t n, const std::vector<Index>& support) {
  std::vector<double> p(n, 0.0);
  for (Index i : support) {
    if (i >= n) throw InvalidArgument("support index out of range");
    if (p[i] != 0.0) throw InvalidArgument("support index repeated");
    p[i] = 1.0;
  }
  if (support.empty()) throw InvalidArgument("support is empty");
  for (auto& v : p) v /= static_cast<double>(support.size());
  return SimplexPoint(std::move(p));
}

SimplexPoint SimplexPoint::from_probabilities(std::vector<double> p) {
  if (p.empty()) throw InvalidArgument("distribution needs at least one point");
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("probabilities must be finite and nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance)
    throw InvalidArgument("probabilities sum to " + std::to_string(total) + ", not 1");
  return SimplexPoint(std::move(p));
}

SimplexPoint SimplexPoint::normalized(std::vector<double> weights) {
  double total = 0.0;
  for (double v : weights) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("weights must be finite and nonnegative");
    total += v;
  }
  if (!(total > 0.0)) throw InvalidArgument("weights must have a positive sum");
  for (auto& v : weights) v /= total;
  return SimplexPoint(std::move(weights));
}

std::vector<Index> SimplexPoint::support() const {
  std::vector<Index> out;
  for (Index i = 0; i < p_.size(); ++i)
    if (p_[i] > 0.0) out.push_back(i);
  return out;
}

double distance_spectrum(const SimplexPoint& p, const ConfusabilityMatrix& conf) {
  if (p.size() != conf.size())
    throw InvalidArgument("distribution has " + std::to_string(p.size()) + " entries, space has " +
                          std::to_string(conf.size()));
  long double total = 0.0L;
  for (Index i : p.support()) {
    long double row = 0.0L;
    for_each_in_row(conf, i, [&](Index j) { row += p[j]; });
    total += p[i] * row;
  }
  return static_cast<double>(total);
}

SpectrumResult SpectrumResult::evaluate(SimplexPoint p, const ConfusabilityMatrix& conf) {
  SpectrumResult r;
  r.value = distance_spectrum(p, conf);
  r.reciprocal = r.value > 0.0 ? 1.0 / r.value : std::numeric_limits<double>::infinity();
  r.distribution = std::move(p);
  return r;
}

SpectrumResult minimize_spectrum(const ConfusabilityMatrix& conf, const QpConfig& cfg) {
  if (cfg.restarts == 0 || cfg.max_iters == 0 || !(cfg.step_tolerance > 0.0))
    throw InvalidArgument("restarts, max_iters and step_tolerance must be positive");
  const std::size_t n = conf.size();
  std::vector<Index> best;
  std::vector<double> history;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    std::vector<double> x = r == 0 ? std::vector<double>(n, 1.0 / static_cast<double>(n))
                                   : random_start(n, cfg.seed, r);
    auto code = round_to_code(conf, replicate(conf, std::move(x), cfg));
    if (code.size() > best.size()) best = std::move(code);
    history.push_back(1.0 / static_cast<double>(best.size()));
  }

  auto result = SpectrumResult::evaluate(SimplexPoint::uniform_on(n, best), conf);
  result.best_history = std::move(history);
  if (n <= cfg.certify_max_vertices) {
    SearchConfig search;
    search.node_budget = cfg.certify_budget;
    const auto exact = max_distance_code(conf, search);
    if (exact.certified) {
      result.oracle_M = exact.code.size();
      result.certified = std::llround(result.reciprocal) == static_cast<long long>(exact.code.size()) &&
                         std::abs(result.reciprocal - static_cast<double>(exact.code.size())) < 0.5;
    }
  }
  return result;
}

UdBound ud_bound(const SimplexPoint& p, const ConfusabilityMatrix& conf) {
  const double s = distance_spectrum(p, conf);
  if (s == 0.0) return {std::numeric_limits<double>::infinity(), true};
  return {1.0 / s, false};
}

namespace {
Theorem1Report compare(const ConfusabilityMatrix& conf, const SearchResult& exact, const QpConfig& qp) {
  if (!exact.certified) throw BudgetExceeded("oracle budget exhausted", exact.code, exact.nodes);
  QpConfig q = qp;
  q.certify_max_vertices = 0;
  const auto res = minimize_spectrum(conf, q);
  Theorem1Report out;
  out.M_star = exact.code.size();
  out.qp_value = res.value;
  out.qp_reciprocal = res.reciprocal;
  out.equal = std::llround(res.reciprocal) == static_cast<long long>(out.M_star) &&
              std::abs(res.value - 1.0 / static_cast<double>(out.M_star)) <= 1e-9;
  return out;
}
}  // namespace

Theorem1Report verify_theorem1(const ConfusabilityMatrix& conf, const QpConfig& qp, const SearchConfig& search) {
  return compare(conf, max_distance_code(conf, search), qp);
}

Theorem1Report verify_theorem1(const CodeSpace& space, const Threshold& d, const QpConfig& qp,
                              const SearchConfig& search) {
  const auto conf = ConfusabilityMatrix::build(space, d);
  const auto symmetry = search_symmetry(space);
  return compare(conf, max_distance_code(conf, search, symmetry ? &*symmetry : nullptr), qp);
}

}  // namespace distspec
