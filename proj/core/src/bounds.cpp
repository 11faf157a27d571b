#include "distspec/bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cmath>

#include "distspec/errors.hpp"

namespace distspec {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int binomial(int n, int k) {
  cpp_int c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

cpp_int power(int base, int e) {
  cpp_int p = 1;
  for (int i = 0; i < e; ++i) p *= base;
  return p;
}

std::string to_fraction(const cpp_rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

double to_double(const cpp_rational& r) { return r.convert_to<double>(); }

void check_hamming(int n, int d, int q) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (d < 1) throw InvalidArgument("d must be at least 1");
  if (q < 2) throw InvalidArgument("alphabet size must be at least 2");
}

/// sum_{i<d} C(n,i) (Q-1)^i, capped at the full space.
cpp_int ball_volume(int n, int d, int q) {
  cpp_int v = 0;
  for (int i = 0; i < std::min(d, n + 1); ++i) v += binomial(n, i) * power(q - 1, i);
  return v;
}

BoundReport report(std::string name, const cpp_rational& value, BoundKind kind) {
  BoundReport r;
  r.name = std::move(name);
  r.value = to_double(value);
  r.kind = kind;
  r.exact = to_fraction(value);
  return r;
}

std::int64_t pow2(int n) {
  if (n < 1 || n > 62) throw InvalidArgument("n must lie in [1, 62]");
  return std::int64_t{1} << n;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

std::int64_t positive_ceil(const Threshold& d) {
  if (!(d.value() > 0.0)) throw InvalidArgument("d must be positive");
  return d.ceil();
}

}  // namespace

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Lower: return "lower";
    case BoundKind::Upper: return "upper";
    case BoundKind::Exact: return "exact";
  }
  return "lower";
}

BoundReport gv_bound(int n, int d, int q) {
  check_hamming(n, d, q);
  auto r = report("gv", cpp_rational(power(q, n), ball_volume(n, d, q)), BoundKind::Lower);
  r.parameters = {{"n", std::to_string(n)}, {"d", std::to_string(d)}, {"q", std::to_string(q)}};
  if (d > n) r.flags.push_back("out_of_range");
  return r;
}

BoundReport hamming_ud_spectrum(int n, int d, int q) {
  check_hamming(n, d, q);
  auto r = report("hamming_ud_spectrum", cpp_rational(ball_volume(n, d, q), power(q, n)), BoundKind::Exact);
  r.parameters = {{"n", std::to_string(n)}, {"d", std::to_string(d)}, {"q", std::to_string(q)}};
  if (d > n) r.flags.push_back("out_of_range");
  return r;
}

namespace {

/// Pr[T1^2 + T2^2 < d^2] with T1, T2 independent of density 2(1-t) on [0,1].
double example1_probability(double d, int resolution) {
  const double d2 = d * d;
  const double h = 1.0 / resolution;
  long double total = 0.0L;
  for (int k = 0; k < resolution; ++k) {
    const double t1 = (k + 0.5) * h;
    const double rest = d2 - t1 * t1;
    if (rest <= 0.0) continue;
    const double u = std::min(1.0, std::sqrt(rest));
    total += 2.0 * (1.0 - t1) * (2.0 * u - u * u);
  }
  return std::min(1.0, static_cast<double>(total * h));
}

}  // namespace

Example1Result example1_ud_bound(double d, int resolution) {
  if (!(d > 0.0) || !std::isfinite(d)) throw InvalidArgument("d must be positive and finite");
  if (resolution < 2) throw InvalidArgument("resolution must be at least 2");
  Example1Result r;
  if (d * d >= 2.0) return r;
  r.probability = example1_probability(d, resolution);
  r.value = 1.0 / r.probability;
  r.error_estimate = std::abs(r.value - 1.0 / example1_probability(d, resolution / 2));
  return r;
}

std::vector<BoundReport> example2_bounds(const Threshold& d) {
  if (!(d.value() > 0.0 && d.value() < 1.0)) throw InvalidArgument("d must lie in (0, 1)");
  std::vector<BoundReport> out;
  const auto& ex = d.exact();
  auto param = [&](BoundReport& r) { r.parameters = {{"d", d.to_string()}}; };

  if (ex) {
    const cpp_rational q(ex->num, ex->den);
    const cpp_rational half(1, 2);
    const cpp_rational p = q < half ? cpp_rational(2 * q * q) : cpp_rational(1 - 2 * (1 - q) * (1 - q));
    out.push_back(report("L_uniform", 1 / p, BoundKind::Lower));
  } else {
    const double x = d.value();
    const double p = x < 0.5 ? 2 * x * x : 1 - 2 * (1 - x) * (1 - x);
    out.push_back({"L_uniform", 1.0 / p, BoundKind::Lower, {}, std::nullopt, {}});
  }
  param(out.back());

  // floor(c / d), exact for rational d.
  auto floor_ratio = [&](std::int64_t c) -> std::int64_t {
    if (ex) return (c * ex->den) / ex->num;
    return static_cast<std::int64_t>(std::floor(c / d.value()));
  };
  const std::int64_t l = floor_ratio(1);
  out.push_back(report("L_circ", cpp_rational(l * l), BoundKind::Lower));
  param(out.back());
  if (ex && ex->num == 1 && ex->den >= 2) {
    out.push_back(report("L_star", cpp_rational(2 * ex->den * ex->den), BoundKind::Lower));
    out.back().parameters = {{"d", d.to_string()}, {"k", std::to_string(ex->den)}};
  }
  out.push_back(report("L_diamond", cpp_rational(floor_ratio(2)), BoundKind::Lower));
  param(out.back());
  return out;
}

namespace {

CodeSpace circular_grid(std::size_t m) {
  const std::size_t cap = std::max(kDefaultEnumerationCap, m * m);
  return CodeSpace(BlockSpace(SymbolAlphabet::of_size(m), 2, cap), Functional{FunctionalForm::RectilinearModGrid});
}

}  // namespace

GridOptimum example2_grid_optimum(const Threshold& d, std::size_t grid, const SearchConfig& cfg, std::size_t sub_grid) {
  if (grid < 1) throw InvalidArgument("grid must have at least one point");
  if (!(d.value() > 0.0)) throw InvalidArgument("d must be positive");
  GridOptimum out;
  out.grid = grid;
  if (grid * grid <= kDefaultEnumerationCap && sub_grid == 0) {
    const CodeSpace space = circular_grid(grid);
    const auto conf = ConfusabilityMatrix::build(space, d);
    const auto sym = search_symmetry(space);
    const auto res = max_distance_code(conf, cfg, sym ? &*sym : nullptr);
    out.method = "oracle";
    out.value = res.code.size();
    out.certified = res.certified;
    out.upper = res.certified ? out.value : grid * grid;
    out.code = res.code.indices();
    out.nodes = res.nodes;
    return out;
  }

  const CodeSpace space = circular_grid(grid);
  const auto bound = transitive_upper_bound(space, d);
  out.method = "lifted";
  out.upper = bound.value;
  std::vector<std::size_t> candidates;
  if (sub_grid != 0) {
    if (grid % sub_grid != 0) throw InvalidArgument("sub-grid must divide the grid");
    candidates.push_back(sub_grid);
  } else {
    for (std::size_t m = 2; m < grid && m * m <= kDefaultEnumerationCap; ++m)
      if (grid % m == 0) candidates.push_back(m);
  }
  for (std::size_t m : candidates) {
    const CodeSpace small = circular_grid(m);
    if (!d.exceeds(small.mu_min())) continue;
    const auto conf = ConfusabilityMatrix::build(small, d);
    const auto sym = search_symmetry(small);
    const auto res = max_distance_code(conf, cfg, sym ? &*sym : nullptr);
    out.nodes += res.nodes;
    // Letter a of the small grid sits at the same point as letter a * (grid / m).
    const std::size_t scale = grid / m;
    std::vector<Index> lifted;
    for (Index w : res.code.indices()) {
      const auto letters = small.space().letters(w);
      lifted.push_back(letters[0] * scale + letters[1] * scale * grid);
    }
    const auto code = CodeSet::certify(std::move(lifted), space, d);
    if (code.size() > out.value) {
      out.value = code.size();
      out.code = code.indices();
      out.sub_grid = m;
    }
    if (out.value == out.upper) {
      out.certified = true;
      break;
    }
  }
  return out;
}

std::vector<Index> example2_star_code(std::size_t k, std::size_t grid) {
  if (k < 2 || grid % (2 * k) != 0) throw InvalidArgument("the construction needs k >= 2 and 2k dividing the grid");
  const std::size_t half = grid / (2 * k);
  std::vector<Index> code;
  for (std::size_t j = 0; j < 2 * k; ++j)
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t x = j * half;
      const std::size_t y = (x + i * 2 * half) % grid;
      code.push_back(x + y * grid);
    }
  std::sort(code.begin(), code.end());
  return code;
}

std::uint64_t example3_exact(int n, const Threshold& d) {
  return static_cast<std::uint64_t>(ceil_div(pow2(n), positive_ceil(d)));
}

namespace {

cpp_rational example3_gv_value(int n, const Threshold& d) {
  const std::int64_t size = pow2(n);
  const std::int64_t c = positive_ceil(d);
  const cpp_int n2 = cpp_int(size) * size;
  cpp_rational value;
  if (c <= size / 2)
    value = cpp_rational(n2, cpp_int(3 * c - 1) * c + cpp_int(2 * c - 1) * (size - 2 * c));
  else if (c <= size - 1)
    value = cpp_rational(n2, n2 + cpp_int(c - size) * (size - c + 1));
  else
    value = 1;
  return value;
}

}  // namespace

BoundReport example3_gv(int n, const Threshold& d) {
  auto r = report("example3_gv", example3_gv_value(n, d), BoundKind::Lower);
  r.parameters = {{"n", std::to_string(n)}, {"d", d.to_string()}};
  return r;
}

int example3_gv_compare(int n, const Threshold& d) {
  const cpp_rational g = example3_gv_value(n, d);
  const cpp_rational m = cpp_int(example3_exact(n, d));
  return g < m ? -1 : (g > m ? 1 : 0);
}

std::uint64_t example3_upper(int n, const Threshold& d) {
  // Split the normalised value into J = ceil(2^n / ceil(d)) cells of width
  // 1/J. Two words in one cell differ by less than ceil(d), so the confusion
  // probability is at least the sum of squared cell masses, hence >= 1/J.
  const std::int64_t cells = ceil_div(pow2(n), positive_ceil(d));
  return static_cast<std::uint64_t>(cells);
}

}  // namespace distspec
