#include <doctest.h>

#include <cmath>

#include "distspec/zero_error.hpp"
#include "reference.hpp"

using namespace distspec;

namespace {

ChannelModel pentagon() {
  return ChannelModel::parse_csv(
      "in,y0,y1,y2,y3,y4\n"
      "x0,1/2,1/2,0,0,0\n"
      "x1,0,1/2,1/2,0,0\n"
      "x2,0,0,1/2,1/2,0\n"
      "x3,0,0,0,1/2,1/2\n"
      "x4,1/2,0,0,0,1/2\n");
}

ChannelModel identity(std::size_t q) {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> m(q, std::vector<double>(q, 0.0));
  for (std::size_t i = 0; i < q; ++i) {
    labels.push_back(std::to_string(i));
    m[i][i] = 1.0;
  }
  return ChannelModel(labels, labels, m);
}

ChannelModel all_confusable(std::size_t q) {
  std::vector<std::string> in, out{"a", "b"};
  for (std::size_t i = 0; i < q; ++i) in.push_back(std::to_string(i));
  return ChannelModel(in, out, std::vector<std::vector<double>>(q, {0.25, 0.75}));
}

}  // namespace

TEST_CASE("channel parsing") {
  const auto p = pentagon();
  CHECK(p.inputs() == 5);
  CHECK(p.outputs() == 5);
  CHECK(p.exact_support());
  CHECK(p.input_labels().front() == "x0");
  CHECK(p.positive(4, 0));
  CHECK_FALSE(p.positive(4, 1));

  const auto unlabelled = ChannelModel::parse_csv("a,b\n0.9,0.1\n0.2,0.8\n");
  CHECK(unlabelled.inputs() == 2);
  CHECK_FALSE(unlabelled.exact_support());
  const auto numeric_labels = ChannelModel::parse_csv("in,a,b\n0,1,0\n1,0,1\n");
  CHECK(numeric_labels.inputs() == 2);
  CHECK(numeric_labels.positive(1, 1));

  CHECK_THROWS_AS(ChannelModel::parse_csv("a,b\n0.5,0.6\n"), Error);
  CHECK_THROWS_AS(ChannelModel::parse_csv("a,b\n1.2,-0.2\n"), Error);
  CHECK_THROWS_AS(ChannelModel::parse_csv("a,b\nx,y\n"), Error);
  CHECK_THROWS_AS(ChannelModel::parse_csv(""), Error);

  // Float noise below the positivity threshold does not create confusability.
  const auto noisy = ChannelModel::parse_csv("a,b\n1e-15,0.999999999999999\n1,0\n");
  CHECK_FALSE(noisy.positive(0, 0));
}

TEST_CASE("single-letter confusability") {
  const auto id = confusability_from_channel(identity(3));
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) CHECK(id.table[a][b] == (a == b ? 0.0 : 1.0));

  const auto pent = confusability_from_channel(pentagon());
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b) {
      const bool edge = a == b || (a + 1) % 5 == b || (b + 1) % 5 == a;
      CHECK(pent.table[a][b] == (edge ? 0.0 : 1.0));
      CHECK(pent.table[a][b] == pent.table[b][a]);
    }

  const auto all = confusability_from_channel(all_confusable(4));
  for (const auto& row : all.table)
    for (double v : row) CHECK(v == 0.0);
}

TEST_CASE("product confusability") {
  const auto c1 = product_confusability(pentagon(), 1);
  for (Index a = 0; a < 5; ++a)
    for (Index b = 0; b < 5; ++b) CHECK(c1.test(a, b) == (a == b || (a + 1) % 5 == b || (b + 1) % 5 == a));

  // Strong product: confusable iff both coordinates are.
  const auto c2 = product_confusability(pentagon(), 2);
  for (Index u = 0; u < 25; ++u)
    for (Index v = 0; v < 25; ++v) CHECK(c2.test(u, v) == (c1.test(u % 5, v % 5) && c1.test(u / 5, v / 5)));

  const auto id = product_confusability(identity(2), 3);
  for (Index u = 0; u < 8; ++u)
    for (Index v = 0; v < 8; ++v) CHECK(id.test(u, v) == (u == v));

  const auto all = product_confusability(all_confusable(3), 2);
  for (Index u = 0; u < 9; ++u) CHECK(all.row_count(u) == 9);

  CHECK_THROWS_AS(product_confusability(pentagon(), 8), EnumerationCapExceeded);
}

TEST_CASE("pentagon rates") {
  const auto r = zero_error_lower_bound(pentagon(), 2);
  REQUIRE(r.per_n.size() == 2);
  CHECK(r.per_n[0].M_star == 2);
  CHECK(r.per_n[1].M_star == 5);
  CHECK(std::abs(r.per_n[0].rate - std::log(2.0)) <= 1e-9);
  CHECK(std::abs(r.per_n[1].rate - 0.5 * std::log(5.0)) <= 1e-9);
  CHECK(r.best_rate == doctest::Approx(0.8047).epsilon(1e-4));
  CHECK(std::abs(r.korn - std::log(2.0)) <= 1e-6);
  CHECK(r.best_rate > r.korn);
  CHECK_FALSE(r.truncated);
  CHECK(r.per_n[1].M_star >= r.per_n[0].M_star * r.per_n[0].M_star);
}

TEST_CASE("trivial channels") {
  const auto id = zero_error_lower_bound(identity(3), 1);
  CHECK(id.best_rate == doctest::Approx(std::log(3.0)));
  CHECK(korn_bound(identity(3)) == doctest::Approx(std::log(3.0)));
  const auto all = zero_error_lower_bound(all_confusable(3), 2);
  CHECK(all.best_rate == 0.0);
  CHECK(korn_bound(all_confusable(3)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("truncation when the product space is too large") {
  const auto r = zero_error_lower_bound(pentagon(), 3, {}, {}, 100);
  CHECK(r.truncated);
  CHECK(r.per_n.size() == 2);
}

TEST_CASE("random channels: single-letter bound below the best rate, products superadditive") {
  ref::Rng rng(17);
  for (int t = 0; t < 15; ++t) {
    const std::size_t x = rng.between(2, 5), y = rng.between(2, 5);
    std::vector<std::string> in, out;
    for (std::size_t i = 0; i < x; ++i) in.push_back("x" + std::to_string(i));
    for (std::size_t j = 0; j < y; ++j) out.push_back("y" + std::to_string(j));
    std::vector<std::vector<double>> m(x, std::vector<double>(y, 0.0));
    for (auto& row : m) {
      double s = 0.0;
      for (auto& v : row) s += (v = rng.uniform() < 0.5 ? 0.0 : rng.uniform());
      if (s == 0.0) row[rng.below(y)] = s = 1.0;
      for (auto& v : row) v /= s;
    }
    const ChannelModel ch(in, out, m);
    const auto r = zero_error_lower_bound(ch, 2);
    CHECK(r.korn <= r.best_rate + 1e-9);
    CHECK(r.per_n[1].M_star >= r.per_n[0].M_star * r.per_n[0].M_star);
  }
}
