#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "distspec/exact_oracle.hpp"
#include "distspec/threshold.hpp"

namespace distspec {

enum class BoundKind { Lower, Upper, Exact };
const char* to_string(BoundKind kind);

struct BoundReport {
  std::string name;
  double value = 0.0;
  BoundKind kind = BoundKind::Lower;
  std::map<std::string, std::string> parameters;
  /// Reduced fraction "p/q" when the value was evaluated exactly.
  std::optional<std::string> exact;
  std::vector<std::string> flags;
};

/// Q^n / sum_{i<d} C(n,i) (Q-1)^i. For d > n the ball is the whole space;
/// the value is 1 and the report carries the flag "out_of_range".
BoundReport gv_bound(int n, int d, int q);

/// sum_{i<d} C(n,i) (1-1/Q)^i (1/Q)^(n-i), the confusion probability of two
/// uniform words; the reciprocal of gv_bound.
BoundReport hamming_ud_spectrum(int n, int d, int q);

struct Example1Result {
  /// 1 / probability.
  double value = 1.0;
  double probability = 1.0;
  /// |value - value at half resolution|.
  double error_estimate = 0.0;
};

/// Uniform-distribution bound for the Euclidean distance on [0,1)^2:
/// 1 / Pr[(X1'-X1)^2 + (X2'-X2)^2 < d^2]. With t = |X' - X| (density
/// 2(1-t)) the inner integral is closed form and the outer one uses the
/// midpoint rule on `resolution` cells.
Example1Result example1_ud_bound(double d, int resolution = 4096);

/// Lower bounds on M*_2(d) for the circular rectilinear distance on [0,1)^2:
/// L_uniform, L_circ = floor(1/d)^2, L_diamond = floor(2/d), and
/// L_star = 2k^2 when d = 1/k for an integer k >= 2.
std::vector<BoundReport> example2_bounds(const Threshold& d);

/// M*_2(d) on the m x m circular grid with the rectilinear-mod distance.
struct GridOptimum {
  std::size_t grid = 0;
  std::size_t value = 0;
  bool certified = false;
  /// "oracle": branch and bound on the grid itself. "lifted": an optimal
  /// code of a divisor grid, re-verified on this grid, meets the
  /// clique-coclique upper bound.
  std::string method;
  std::size_t sub_grid = 0;
  std::size_t upper = 0;
  std::vector<Index> code;
  std::uint64_t nodes = 0;
};

/// Runs the oracle directly when grid^2 fits the enumeration cap. Larger
/// grids use divisor grids (`sub_grid`, or ascending divisors when 0) until
/// a lifted code reaches the upper bound.
GridOptimum example2_grid_optimum(const Threshold& d, std::size_t grid, const SearchConfig& cfg = {},
                                  std::size_t sub_grid = 0);

/// The 2k^2-point code for d = 1/k on an m-grid with 2k | m: first
/// coordinate j m/(2k), second shifted by multiples of m/k.
std::vector<Index> example2_star_code(std::size_t k, std::size_t grid);

/// ceil(2^n / ceil(d)) for the binary-representation distance.
std::uint64_t example3_exact(int n, const Threshold& d);
/// Uniform-distribution bound over the whole space for the same distance.
BoundReport example3_gv(int n, const Threshold& d);
/// Sign of example3_gv(n, d) - example3_exact(n, d), compared exactly.
int example3_gv_compare(int n, const Threshold& d);
/// Upper bound from partitioning [0, 2^n) into ceil(2^n / ceil(d)) cells.
std::uint64_t example3_upper(int n, const Threshold& d);

}  // namespace distspec
