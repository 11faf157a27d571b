#include "serialize.hpp"

#include <cmath>

namespace distspec::cli {

json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json to_json(const CodeSet& code, const BlockSpace* space) {
  json j{{"size", code.size()}, {"indices", code.indices()},
         {"certified_min_distance", number(code.certified_min_distance())}};
  if (space) {
    json words = json::array();
    for (Index i : code.indices()) words.push_back(space->word_label(i));
    j["words"] = std::move(words);
  }
  return j;
}

json to_json(const SpectrumResult& r) {
  json support = json::array(), weights = json::array();
  for (Index i : r.distribution.support()) {
    support.push_back(i);
    weights.push_back(r.distribution[i]);
  }
  json hist = json::array();
  for (double v : r.best_history) hist.push_back(number(v));
  return {{"value", number(r.value)},
          {"reciprocal", number(r.reciprocal)},
          {"support", std::move(support)},
          {"weights", std::move(weights)},
          {"best_history", std::move(hist)},
          {"certified", r.certified ? json(*r.certified) : json(nullptr)},
          {"oracle_M", r.oracle_M ? json(*r.oracle_M) : json(nullptr)}};
}

json to_json(const Theorem1Report& r) {
  return {{"M_star", r.M_star},
          {"qp_value", number(r.qp_value)},
          {"qp_reciprocal", number(r.qp_reciprocal)},
          {"equal", r.equal}};
}

json to_json(const CoverTrace& t, const BlockSpace* space) {
  json j{{"centers", t.centers}, {"masses", t.masses}, {"uncovered_after", t.uncovered_after}};
  if (space) {
    json words = json::array();
    for (Index c : t.centers) words.push_back(space->word_label(c));
    j["center_words"] = std::move(words);
  }
  return j;
}

json to_json(const CoverCheck& c) { return {{"valid", c.valid}, {"violations", c.violations}}; }

json to_json(const BoundReport& r) {
  json j{{"name", r.name}, {"value", number(r.value)}, {"kind", to_string(r.kind)}, {"parameters", r.parameters}};
  if (r.exact) j["exact"] = *r.exact;
  if (!r.flags.empty()) j["flags"] = r.flags;
  return j;
}

json to_json(const Example1Result& r) {
  return {{"value", number(r.value)},
          {"ceil", number(std::ceil(r.value))},
          {"probability", number(r.probability)},
          {"error_estimate", number(r.error_estimate)}};
}

json to_json(const GridOptimum& g) {
  json j{{"grid", g.grid},       {"value", g.value},   {"certified", g.certified},
         {"method", g.method},   {"upper", g.upper},   {"nodes", g.nodes}};
  if (g.sub_grid) j["sub_grid"] = g.sub_grid;
  return j;
}

json to_json(const ZeroErrorReport& r, bool bits) {
  const double unit = bits ? std::log(2.0) : 1.0;
  json per = json::array();
  for (const auto& e : r.per_n) per.push_back({{"n", e.n}, {"M_star", e.M_star}, {"rate", number(e.rate / unit)}});
  return {{"per_n", std::move(per)},
          {"best_rate", number(r.best_rate / unit)},
          {"korn", number(r.korn / unit)},
          {"truncated", r.truncated},
          {"unit", bits ? "bits" : "nats"}};
}

json to_json(const RateReport& r) {
  return {{"b", number(r.b)},
          {"theta_star", number(r.theta_star)},
          {"I", number(r.I)},
          {"J", number(r.J)},
          {"phi2", number(r.phi2)},
          {"phi4", number(r.phi4)},
          {"second_order_rhs", r.second_order_rhs ? number(*r.second_order_rhs) : json(nullptr)},
          {"stationarity_residual", number(r.stationarity_residual)},
          {"optimizer_certified", r.optimizer_certified},
          {"out_of_model", r.out_of_model}};
}

json to_json(const ChernoffReport& r) {
  return {{"probability", number(r.probability)},
          {"bound", number(r.bound)},
          {"J", number(r.J)},
          {"holds", r.holds}};
}

}  // namespace distspec::cli
