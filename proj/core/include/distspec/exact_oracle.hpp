#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "distspec/code_set.hpp"
#include "distspec/confusability.hpp"
#include "distspec/errors.hpp"
#include "distspec/space.hpp"
#include "distspec/threshold.hpp"

namespace distspec {

struct SearchConfig {
  std::uint64_t node_budget = 100'000'000;
  /// Return the lexicographically least maximum code instead of the first
  /// one found. Costs one extra bounded search per vertex.
  bool report_witness = false;
};

struct SearchResult {
  CodeSet code;
  /// False when the node budget ran out; code is then only a lower bound.
  bool certified = false;
  std::uint64_t nodes = 0;
};

/// Thrown by exact_M when the budget runs out. Carries the best code found.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, CodeSet best, std::uint64_t nodes)
      : Error(what), best_(std::move(best)), nodes_(nodes) {}
  const char* kind() const noexcept override { return "BudgetExceeded"; }
  const CodeSet& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  CodeSet best_;
  std::uint64_t nodes_;
};

/// Symmetries of an additive block distance that the search may exploit.
///
/// Words are base-q digit strings of length n. Every coordinate permutation
/// preserves an additive distance, and so does applying any of
/// `letter_automorphisms` to any single coordinate. When those letter maps
/// act transitively, every word lies in some maximum code and the search is
/// anchored at word 0.
struct SearchSymmetry {
  std::size_t q = 0;
  std::size_t n = 0;
  /// Letter permutations preserving the per-letter table; always contains
  /// the identity. May be a partial list (any automorphisms are sound).
  std::vector<std::vector<std::uint32_t>> letter_automorphisms;
  bool vertex_transitive = false;
};

/// Symmetry data for additive per-letter measures and the circular grid;
/// nullopt for measures without a coordinate structure.
std::optional<SearchSymmetry> search_symmetry(const CodeSpace& space);

/// Maximum independent set of the off-diagonal confusability graph, found as
/// a maximum clique of its complement by branch and bound with greedy
/// colouring bounds. Vertices are searched in degree-descending order.
///
/// With `symmetry`, branches equivalent under the stabiliser of the current
/// partial code are pruned (orbital branching); the result is still exact.
SearchResult max_distance_code(const ConfusabilityMatrix& conf, const SearchConfig& cfg = {},
                               const SearchSymmetry* symmetry = nullptr);

/// Clique-coclique bound for vertex-transitive spaces: M* <= floor(N / |K|)
/// for any set K of pairwise confusable words. K is grown greedily from
/// word 0 in order of distance. Works on the space directly, so it also
/// applies beyond the matrix enumeration cap.
struct TransitiveBound {
  std::size_t value = 0;
  std::vector<Index> clique;
};
/// Throws PreconditionViolated unless search_symmetry(space) is vertex
/// transitive.
TransitiveBound transitive_upper_bound(const CodeSpace& space, const Threshold& d);

/// M*_n(d), using search_symmetry(space) when available. Throws
/// BudgetExceeded if the search could not be completed.
std::size_t exact_M(const CodeSpace& space, const Threshold& d, const SearchConfig& cfg = {});

}  // namespace distspec
