#include "distspec/greedy_cover.hpp"

#include <cmath>

#include "distspec/errors.hpp"

namespace distspec {

namespace {

constexpr double kMassTolerance = 1e-12;

/// Mass of support points in row i that are still uncovered.
long double new_mass(const ConfusabilityMatrix& conf, Index i, const Bitset& uncovered, const SimplexPoint& p) {
  const auto row = conf.row(i);
  const auto open = uncovered.words();
  long double s = 0.0L;
  for (std::size_t k = 0; k < row.size(); ++k) {
    Word w = row[k] & open[k];
    while (w) {
      s += p[k * kWordBits + static_cast<std::size_t>(std::countr_zero(w))];
      w &= w - 1;
    }
  }
  return s;
}

}  // namespace

GreedyResult greedy_code(const SimplexPoint& p, const ConfusabilityMatrix& conf, CenterRule rule) {
  const std::size_t n = conf.size();
  if (p.size() != n)
    throw InvalidArgument("distribution has " + std::to_string(p.size()) + " entries, space has " +
                          std::to_string(n));
  Bitset uncovered(n);
  long double remaining = 0.0L;
  for (Index i : p.support()) {
    uncovered.set(i);
    remaining += p[i];
  }

  CoverTrace trace;
  while (uncovered.any()) {
    Index pick = n;
    long double pick_mass = 0.0L;
    uncovered.for_each([&](Index i) {
      const long double m = new_mass(conf, i, uncovered, p);
      const bool better = rule == CenterRule::MinNewMass ? m < pick_mass : m > pick_mass;
      if (pick == n || better) {
        pick = i;
        pick_mass = m;
      }
    });
    uncovered.subtract(conf.row(pick));
    remaining -= pick_mass;
    trace.centers.push_back(pick);
    trace.masses.push_back(static_cast<double>(pick_mass));
    trace.uncovered_after.push_back(static_cast<double>(std::max(remaining, 0.0L)));
  }
  return {CodeSet::certify(trace.centers, conf), std::move(trace)};
}

CoverCheck cover_certificate(const CoverTrace& trace, const SimplexPoint& p, const ConfusabilityMatrix& conf) {
  CoverCheck out;
  const std::size_t n = conf.size();
  auto fail = [&](std::string msg) { out.violations.push_back(std::move(msg)); };
  if (p.size() != n) {
    fail("distribution size does not match the space");
    return out;
  }
  if (trace.masses.size() != trace.centers.size() || trace.uncovered_after.size() != trace.centers.size())
    fail("trace sequences have different lengths");

  Bitset support(n);
  for (Index i : p.support()) support.set(i);
  Bitset covered(n);
  long double total = 0.0L;
  for (std::size_t j = 0; j < trace.centers.size(); ++j) {
    const Index c = trace.centers[j];
    if (c >= n) {
      fail("center " + std::to_string(c) + " is out of range");
      continue;
    }
    if (!support.test(c)) fail("center " + std::to_string(c) + " lies outside the support");
    if (covered.test(c)) fail("center " + std::to_string(c) + " was already covered");
    for (std::size_t k = 0; k < j; ++k)
      if (trace.centers[k] < n && conf.test(trace.centers[k], c))
        fail("centers " + std::to_string(trace.centers[k]) + " and " + std::to_string(c) + " are confusable");
    // Cell j: support points in the ball of c not in earlier balls.
    Bitset cell = Bitset::from_words(conf.row(c), n);
    cell &= support;
    cell.subtract(covered);
    long double mass = 0.0L;
    cell.for_each([&](Index i) { mass += p[i]; });
    covered |= cell;
    total += mass;
    if (j < trace.masses.size() && std::abs(static_cast<double>(mass) - trace.masses[j]) > kMassTolerance)
      fail("cell " + std::to_string(j) + " has mass " + std::to_string(static_cast<double>(mass)) +
           ", trace records " + std::to_string(trace.masses[j]));
  }
  Bitset missing = support;
  missing.subtract(covered);
  if (missing.any())
    fail(std::to_string(missing.count()) + " support points are not covered, first " +
         std::to_string(missing.first()));
  if (std::abs(static_cast<double>(total) - 1.0) > kMassTolerance) fail("cell masses do not sum to 1");
  out.valid = out.violations.empty();
  return out;
}

}  // namespace distspec
