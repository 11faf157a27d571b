#include "distspec/confusability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <variant>

#include "distspec/errors.hpp"

namespace distspec {

namespace {
constexpr double kBoundaryTolerance = 1e-12;
constexpr std::size_t kMaxRecordedWarnings = 32;
}  // namespace

ConfusabilityMatrix::ConfusabilityMatrix(std::size_t n, Threshold d)
    : n_(n), stride_(words_for(n)), data_(n * words_for(n), 0), d_(d) {}

ConfusabilityMatrix ConfusabilityMatrix::build(const CodeSpace& space, const Threshold& d) {
  space.space().require_enumerable();
  if (!(d.value() > space.mu_min()))
    throw DegenerateThreshold("threshold d = " + d.to_string() + " does not exceed mu_min = " +
                              std::to_string(space.mu_min()) +
                              "; every pair of distinct words is admissible and M* equals the space size " +
                              std::to_string(space.size()));

  const std::size_t n = space.size();
  ConfusabilityMatrix conf(n, d);
  conf.exact_ = space.exact_arithmetic();

  // Additive measures: unpack every word once and sum the table in the same
  // coordinate order as CodeSpace::block_distance, so results are identical.
  const auto* add = std::get_if<AdditivePerLetter>(&space.measure());
  const std::size_t len = space.space().n(), q = space.space().q();
  std::vector<std::uint32_t> digits;
  std::vector<double> flat;
  if (add) {
    digits.resize(n * len);
    for (Index i = 0; i < n; ++i) {
      Index x = i;
      for (std::size_t p = 0; p < len; ++p, x /= q) digits[i * len + p] = static_cast<std::uint32_t>(x % q);
    }
    for (const auto& row : add->table) flat.insert(flat.end(), row.begin(), row.end());
  }
  const auto additive_distance = [&](Index i, Index j) {
    const std::uint32_t* a = &digits[i * len];
    const std::uint32_t* b = &digits[j * len];
    double fwd = 0.0, bwd = 0.0;
    for (std::size_t p = 0; p < len; ++p) fwd += flat[a[p] * q + b[p]];
    if (space.symmetric()) return fwd;
    for (std::size_t p = 0; p < len; ++p) bwd += flat[b[p] * q + a[p]];
    return std::min(fwd, bwd);
  };

  for (Index i = 0; i < n; ++i) {
    conf.set(i, i);
    for (Index j = i + 1; j < n; ++j) {
      if (add ? d.exceeds(additive_distance(i, j)) : space.within(i, j, d)) {
        conf.set(i, j);
        conf.set(j, i);
      }
      if (!conf.exact_) {
        const double dist = add ? additive_distance(i, j) : space.symmetrized_distance(i, j);
        if (std::abs(dist - d.value()) <= kBoundaryTolerance) {
          if (conf.warnings_.size() < kMaxRecordedWarnings) conf.warnings_.push_back({i, j, dist});
          ++conf.warning_count_;
        }
      }
    }
  }
  return conf;
}

ConfusabilityMatrix ConfusabilityMatrix::from_adjacency(const std::vector<std::vector<bool>>& adjacency) {
  const std::size_t n = adjacency.size();
  if (n == 0) throw InvalidArgument("adjacency must be non-empty");
  ConfusabilityMatrix conf(n, Threshold::real(1.0));
  for (Index i = 0; i < n; ++i) {
    if (adjacency[i].size() != n) throw InvalidArgument("adjacency must be square");
    conf.set(i, i);
    for (Index j = 0; j < n; ++j)
      if (adjacency[i][j]) {
        conf.set(i, j);
        conf.set(j, i);
      }
  }
  return conf;
}

ConfusabilityMatrix ConfusabilityMatrix::from_edges(std::size_t n, const std::vector<std::pair<Index, Index>>& edges) {
  if (n == 0) throw InvalidArgument("graph must be non-empty");
  ConfusabilityMatrix conf(n, Threshold::real(1.0));
  for (Index i = 0; i < n; ++i) conf.set(i, i);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw InvalidArgument("edge endpoint out of range");
    conf.set(a, b);
    conf.set(b, a);
  }
  return conf;
}

std::size_t ConfusabilityMatrix::row_count(Index i) const {
  std::size_t c = 0;
  for (Word w : row(i)) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

}  // namespace distspec
