// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "distspec/asymptotic.hpp"
#include "distspec/bounds.hpp"
#include "distspec/exact_oracle.hpp"
#include "distspec/greedy_cover.hpp"
#include "distspec/spectrum_qp.hpp"
#include "distspec/zero_error.hpp"
#include "../unit/reference.hpp"

using namespace distspec;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

CodeSpace hamming(int n) {
  return CodeSpace(BlockSpace(SymbolAlphabet::of_size(2), static_cast<std::size_t>(n)), hamming_measure(2));
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void theorem1(Outcome& o) {
  double worst = 0.0;
  int count = 0;
  auto check = [&](const ConfusabilityMatrix& conf, const std::string& name) {
    const auto r = max_distance_code(conf);
    o.require(r.certified, name + " oracle certified");
    const auto m = r.code.size();
    const auto q = minimize_spectrum(conf);
    const double err = std::abs(q.value - 1.0 / static_cast<double>(m));
    worst = std::max(worst, err);
    o.require(std::llround(1.0 / q.value) == static_cast<long long>(m), name + " round(1/value) == M*");
    o.require(err <= 1e-9, name + " |value - 1/M*| <= 1e-9");
    ++count;
  };
  for (auto [n, d] : {std::pair{3, 2}, {4, 2}, {4, 3}, {5, 3}, {6, 3}})
    check(ConfusabilityMatrix::build(hamming(n), Threshold::rational(d, 1)),
          "hamming(" + std::to_string(n) + "," + std::to_string(d) + ")");
  ref::Rng rng(20240601);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = rng.between(2, 64);
    check(ref::to_conf(ref::random_graph(rng, n, 0.05 + 0.9 * rng.uniform())), "random #" + std::to_string(t));
  }
  o.detail << count << " instances, max |value - 1/M*| = " << fmt(worst);
}

void gv_recovery(Outcome& o) {
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n)
    for (int d = 1; d <= n; ++d) {
      const auto space = hamming(n);
      const auto conf = ConfusabilityMatrix::build(space, Threshold::rational(d, 1));
      const double err = std::abs(gv_bound(n, d, 2).value - ud_bound(SimplexPoint::uniform(space.size()), conf).value);
      worst = std::max(worst, err);
      o.require(err <= 1e-9, "gv == ud at n=" + std::to_string(n) + " d=" + std::to_string(d));
    }
  const double anchor = gv_bound(10, 3, 2).value;
  o.require(std::abs(anchor - 1024.0 / 56.0) <= 1e-9, "gv(10,3,2) == 1024/56");
  o.detail << "55 instances, max error " << fmt(worst) << ", gv(10,3,2) = " << fmt(anchor);
}

void example3(Outcome& o) {
  int count = 0;
  for (int n = 1; n <= 8; ++n) {
    const CodeSpace s(BlockSpace(SymbolAlphabet::of_size(2), static_cast<std::size_t>(n)),
                      Functional{FunctionalForm::BinaryRepresentation});
    const std::int64_t size = std::int64_t{1} << n;
    for (std::int64_t d = 1; d <= size; ++d) {
      const auto t = Threshold::rational(d, 1);
      const std::string at = " at n=" + std::to_string(n) + " d=" + std::to_string(d);
      const auto exact = example3_exact(n, t);
      o.require(exact_M(s, t) == exact, "oracle == closed form" + at);
      o.require(example3_upper(n, t) == exact, "upper == exact" + at);
      const int cmp = example3_gv_compare(n, t);
      const bool boundary = d == 1 || d >= size;
      o.require(boundary ? cmp == 0 : cmp < 0, "gv strictly below except at the boundary" + at);
      ++count;
    }
  }
  o.detail << count << " instances";
}

void example2(Outcome& o) {
  const std::size_t grid = 360;
  const CodeSpace space(BlockSpace(SymbolAlphabet::of_size(grid), 2, grid * grid),
                        Functional{FunctionalForm::RectilinearModGrid});
  for (int k = 2; k <= 4; ++k) {
    const auto d = Threshold::rational(1, k);
    const auto target = static_cast<std::size_t>(2 * k * k);
    const auto opt = example2_grid_optimum(d, grid, {}, 24);
    o.require(opt.certified && opt.value == target, "M* = 2k^2 on the 360 grid for k=" + std::to_string(k));
    bool star = false;
    try {
      star = CodeSet::certify(example2_star_code(static_cast<std::size_t>(k), grid), space, d).size() == target;
    } catch (const Error&) {
    }
    o.require(star, "2k^2 construction verified for k=" + std::to_string(k));
    o.detail << "k=" << k << ": " << opt.value << " (" << opt.method << " from " << opt.sub_grid
             << ", upper " << opt.upper << "); ";
  }
  double uniform = 0.0, diamond = 0.0;
  for (const auto& b : example2_bounds(Threshold::rational(2, 3))) {
    if (b.name == "L_uniform") uniform = b.value;
    if (b.name == "L_diamond") diamond = b.value;
  }
  o.require(diamond == 3.0 && std::ceil(uniform) == 2.0, "L_diamond(2/3) = 3 > ceil(L_uniform(2/3)) = 2");
  o.detail << "L_diamond(2/3) = " << diamond << ", ceil L_uniform(2/3) = " << std::ceil(uniform);
}

void example1(Outcome& o) {
  const auto half = example1_ud_bound(0.5), one = example1_ud_bound(1.0);
  o.require(std::ceil(half.value) == 3, "ceil L(1/2) == 3");
  o.require(std::ceil(one.value) == 2, "ceil L(1) == 2");
  const CodeSpace s(BlockSpace(SymbolAlphabet::of_size(64), 2), Functional{FunctionalForm::EuclideanGrid});
  const auto p = SimplexPoint::uniform(s.size());
  o.detail << "L(1/2) = " << fmt(half.value) << ", L(1) = " << fmt(one.value);
  for (auto [num, den, need] : {std::tuple{1, 2, 8u}, {1, 1, 2u}}) {
    const auto d = Threshold::rational(num, den);
    const auto conf = ConfusabilityMatrix::build(s, d);
    const auto g = greedy_code(p, conf);
    bool verified = false;
    try {
      verified = CodeSet::certify(g.code.indices(), s, d).size() == g.code.size();
    } catch (const Error&) {
    }
    o.require(verified && cover_certificate(g.trace, p, conf).valid, "greedy code verified at d=" + d.to_string());
    o.require(g.code.size() >= need, "greedy size at d=" + d.to_string());
    o.detail << ", greedy k = " << g.code.size() << " at d=" << d.to_string();
  }
}

ChannelModel pentagon_channel() {
  return ChannelModel::parse_csv(
      "y0,y1,y2,y3,y4\n1/2,1/2,0,0,0\n0,1/2,1/2,0,0\n0,0,1/2,1/2,0\n0,0,0,1/2,1/2\n1/2,0,0,0,1/2\n");
}

void pentagon(Outcome& o) {
  const auto r = zero_error_lower_bound(pentagon_channel(), 2);
  o.require(r.per_n.size() == 2, "two block lengths");
  if (r.per_n.size() != 2) return;
  o.require(std::abs(r.per_n[0].rate - std::log(2.0)) <= 1e-9, "rate_1 = log 2");
  o.require(std::abs(r.per_n[1].rate - 0.5 * std::log(5.0)) <= 1e-9, "rate_2 = log(5)/2");
  o.require(std::abs(r.korn - std::log(2.0)) <= 1e-6, "single-letter bound = log 2");
  o.require(r.per_n[1].rate > std::log(2.0), "log(5)/2 > log 2");
  o.detail << "rates " << fmt(r.per_n[0].rate) << ", " << fmt(r.per_n[1].rate) << ", single-letter bound " << fmt(r.korn);
}

void chernoff(Outcome& o) {
  int count = 0;
  double slack = 1e300;
  for (int n = 2; n <= 6; ++n) {
    const auto s = hamming(n);
    for (int j = 1; j < n; ++j) {
      const auto r = chernoff_check(s, SimplexPoint::uniform(s.size()), Threshold::rational(j, n));
      o.require(r.probability <= r.bound + 1e-12,
                "Pr <= exp(-nJ) at n=" + std::to_string(n) + " delta=" + std::to_string(j) + "/" + std::to_string(n));
      slack = std::min(slack, r.bound - r.probability);
      ++count;
    }
  }
  o.detail << count << " instances, smallest margin " << fmt(slack);
}

DistanceDistribution coin(double b) { return DistanceDistribution({0.0, 1.0}, {1.0 - b, b}); }

void rate_function(Outcome& o) {
  double worst = 0.0;
  for (double b : {0.1, 0.25, 0.5, 0.75})
    for (int k = 1; k <= 99; ++k) {
      const double a = k / 100.0;
      const double err = std::abs(rate_function_I(coin(b), a) - ref::binary_kl(a, b));
      worst = std::max(worst, err);
      o.require(err <= 1e-8, "I matches D(a||b) at b=" + fmt(b) + " a=" + fmt(a));
    }
  const double c2 = corollary2_bound(0.25, 2);
  o.require(std::abs(c2 - 0.130812) <= 1e-6, "corollary2(0.25, 2) = 0.130812");
  o.detail << "max |I - D| = " << fmt(worst) << ", corollary2(0.25,2) = " << fmt(c2);
}

void second_order(Outcome& o) {
  const auto r = second_order_upper(coin(0.5), 0.25, 8);
  o.require(std::abs(r.theta_star - std::log(3.0)) <= 1e-8, "theta* = log 3");
  o.require(std::abs(r.phi2 - 0.1875) <= 1e-10, "phi'' = 0.1875");
  o.require(std::abs(r.phi4 + 0.0234375) <= 1e-10, "phi'''' = -0.0234375");
  o.require(r.stationarity_residual < 1e-8, "stationarity residual < 1e-8");
  // Finite differences over random distributions.
  ref::Rng rng(9);
  double worst = 0.0;
  const double h = 1e-5;
  for (int t = 0; t < 10; ++t) {
    const std::size_t m = rng.between(2, 6);
    std::vector<double> v, p;
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      v.push_back(static_cast<double>(k) + 0.5 * rng.uniform());
      p.push_back(0.05 + rng.uniform());
      sum += p.back();
    }
    for (auto& x : p) x /= sum;
    const DistanceDistribution dist(v, p, rng.between(1, 4));
    for (int s = 0; s < 20; ++s) {
      const double th = 4.0 * rng.uniform() - 2.0;
      for (int order = 1; order <= 4; ++order) {
        const double fd = (cumulant_gen(dist, th + h, order - 1) - cumulant_gen(dist, th - h, order - 1)) / (2 * h);
        const double an = cumulant_gen(dist, th, order);
        const double rel = std::abs(an - fd) / std::max(1.0, std::abs(an));
        worst = std::max(worst, rel);
        o.require(rel <= 1e-5, "finite difference of order " + std::to_string(order));
      }
    }
  }
  o.detail << "theta* = " << fmt(r.theta_star) << ", residual " << fmt(r.stationarity_residual)
           << ", worst finite-difference error " << fmt(worst);
}

void lower_chain(Outcome& o) {
  double margin = 1e300;
  for (int n = 4; n <= 8; ++n)
    for (double delta : {0.25, 0.375}) {
      // The per-letter law of an i.i.d. binary source is a coin with b = 2 p (1 - p) in [0, 1/2].
      double sup_j = 0.0;
      for (int k = 1; k <= 500; ++k) sup_j = std::max(sup_j, J_function(coin(k / 1000.0), delta));
      const auto d = static_cast<int>(std::ceil(n * delta));
      const double rate = finite_rate(exact_M(hamming(n), Threshold::rational(d, 1)), static_cast<std::size_t>(n));
      o.require(sup_j <= rate + 1e-9, "sup J <= rate at n=" + std::to_string(n) + " delta=" + fmt(delta));
      margin = std::min(margin, rate - sup_j);
    }
  o.detail << "10 instances, smallest margin " << fmt(margin);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
    double time_limit;
  };
  const Criterion criteria[] = {
      {1, "spectrum minimum equals 1/M*", theorem1, 60},
      {2, "GV recovery", gv_recovery, 0},
      {3, "binary-representation closed forms", example3, 120},
      {4, "circular grid tightness", example2, 0},
      {5, "Euclidean square bounds and greedy codes", example1, 60},
      {6, "pentagon zero-error rates", pentagon, 0},
      {7, "Chernoff inequality", chernoff, 0},
      {8, "rate function closed form", rate_function, 0},
      {9, "second-order evaluation", second_order, 0},
      {10, "lower-bound chain", lower_chain, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0) o.require(secs < c.time_limit, "runtime under " + fmt(c.time_limit) + " s");
    if (!o.pass) ++failures;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str(),
                secs);
  }
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
