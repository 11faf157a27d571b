#include <doctest.h>

#include <cmath>

#include "distspec/exact_oracle.hpp"
#include "distspec/greedy_cover.hpp"
#include "reference.hpp"

using namespace distspec;

namespace {

CodeSpace hamming(int n) {
  return CodeSpace(BlockSpace(SymbolAlphabet::of_size(2), static_cast<std::size_t>(n)), hamming_measure(2));
}

}  // namespace

TEST_CASE("hand trace on the 3-cube") {
  const auto c = ConfusabilityMatrix::build(hamming(3), Threshold::rational(2, 1));
  const auto p = SimplexPoint::uniform(8);
  const auto g = greedy_code(p, c);
  CHECK(g.trace.centers == std::vector<Index>{0b000, 0b011, 0b101, 0b110});
  CHECK(g.code.indices() == std::vector<Index>{0b000, 0b011, 0b101, 0b110});
  REQUIRE(g.trace.masses.size() == 4);
  CHECK(g.trace.masses[0] == doctest::Approx(0.5));
  CHECK(g.trace.masses[1] == doctest::Approx(0.25));
  CHECK(g.trace.masses[2] == doctest::Approx(0.125));
  CHECK(g.trace.masses[3] == doctest::Approx(0.125));
  CHECK(g.trace.uncovered_after.back() == doctest::Approx(0.0));
  CHECK(cover_certificate(g.trace, p, c).valid);
}

TEST_CASE("point mass gives a single center") {
  const auto c = ConfusabilityMatrix::build(hamming(3), Threshold::rational(2, 1));
  const auto g = greedy_code(SimplexPoint::uniform_on(8, {5}), c);
  CHECK(g.trace.centers == std::vector<Index>{5});
  CHECK(g.code.size() == 1);
}

TEST_CASE("grid construction reaches eight codewords at d = 1/2") {
  const CodeSpace s(BlockSpace(SymbolAlphabet::of_size(64), 2), Functional{FunctionalForm::EuclideanGrid});
  const auto d = Threshold::rational(1, 2);
  const auto c = ConfusabilityMatrix::build(s, d);
  const auto p = SimplexPoint::uniform(s.size());
  const auto g = greedy_code(p, c);
  CHECK(g.code.size() >= 8);
  CHECK_NOTHROW(CodeSet::certify(g.code.indices(), s, d));
  CHECK(cover_certificate(g.trace, p, c).valid);
}

TEST_CASE("certificate catches tampering") {
  const auto s = hamming(3);
  const auto c = ConfusabilityMatrix::build(s, Threshold::rational(2, 1));
  const auto p = SimplexPoint::uniform(8);
  const auto g = greedy_code(p, c);

  auto missing = g.trace;
  missing.centers.pop_back();
  missing.masses.pop_back();
  missing.uncovered_after.pop_back();
  const auto a = cover_certificate(missing, p, c);
  CHECK_FALSE(a.valid);
  CHECK_FALSE(a.violations.empty());

  // With d raised to 3 the centers 000 and 011 become confusable.
  const auto tighter = ConfusabilityMatrix::build(s, Threshold::rational(3, 1));
  CHECK_FALSE(cover_certificate(g.trace, p, tighter).valid);

  auto wrong_mass = g.trace;
  wrong_mass.masses[0] += 0.01;
  CHECK_FALSE(cover_certificate(wrong_mass, p, c).valid);
}

TEST_CASE("trace properties on random instances") {
  ref::Rng rng(31);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = rng.between(1, 40);
    const auto g = ref::random_graph(rng, n, rng.uniform());
    const auto conf = ref::to_conf(g);
    std::vector<double> w(n);
    for (auto& x : w) x = rng.uniform() < 0.25 ? 0.0 : rng.uniform();
    w[rng.below(n)] += 0.5;
    const auto p = SimplexPoint::normalized(w);
    for (CenterRule rule : {CenterRule::MinNewMass, CenterRule::MaxNewMass}) {
      const auto r = greedy_code(p, conf, rule);
      const auto k = r.code.size();
      CHECK(cover_certificate(r.trace, p, conf).valid);
      CHECK(k <= ref::mis(g));
      double sum = 0.0, sq = 0.0;
      for (double m : r.trace.masses) {
        sum += m;
        sq += m * m;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
      CHECK(1.0 / sq <= static_cast<double>(k) + 1e-9);
      if (rule == CenterRule::MinNewMass) {
        // a_j is the attained minimum: the new mass of the chosen center's ball.
        double chain = 0.0;
        for (double m : r.trace.masses) chain += m * m;
        CHECK(chain <= distance_spectrum(p, conf) + 1e-12);
      }
    }
  }
}
