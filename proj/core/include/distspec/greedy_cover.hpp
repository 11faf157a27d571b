#pragma once

#include <string>
#include <utility>
#include <vector>

#include "distspec/code_set.hpp"
#include "distspec/confusability.hpp"
#include "distspec/spectrum_qp.hpp"

namespace distspec {

/// Record of the covering construction: center u_j, the mass p_j of the
/// support points it newly covers, and the mass still uncovered afterwards.
struct CoverTrace {
  std::vector<Index> centers;
  std::vector<double> masses;
  std::vector<double> uncovered_after;
};

enum class CenterRule {
  /// Smallest newly covered mass; ties to the lowest index.
  MinNewMass,
  /// Largest newly covered mass; ties to the lowest index.
  MaxNewMass,
};

struct GreedyResult {
  CodeSet code;
  CoverTrace trace;
};

/// Picks uncovered support points of P as centers until their balls cover
/// the support. The centers are pairwise non-confusable.
GreedyResult greedy_code(const SimplexPoint& p, const ConfusabilityMatrix& conf,
                         CenterRule rule = CenterRule::MinNewMass);

struct CoverCheck {
  bool valid = false;
  std::vector<std::string> violations;
};

/// Re-derives the cells from the trace and checks that they are disjoint,
/// cover the support, carry the recorded masses summing to 1, and that the
/// centers are pairwise non-confusable.
CoverCheck cover_certificate(const CoverTrace& trace, const SimplexPoint& p, const ConfusabilityMatrix& conf);

}  // namespace distspec
