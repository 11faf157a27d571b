#include "distspec/io.hpp"

#include "distspec/errors.hpp"

namespace distspec {

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return doc.at(name);
}

Table parse_table(const json& value, const char* what) {
  if (!value.is_array()) throw ParseError(std::string(what) + " must be an array of rows");
  Table t;
  for (const auto& row : value) {
    if (!row.is_array()) throw ParseError(std::string(what) + " rows must be arrays");
    t.emplace_back();
    for (const auto& x : row) {
      if (!x.is_number()) throw ParseError(std::string(what) + " entries must be numbers");
      t.back().push_back(x.get<double>());
    }
  }
  return t;
}

std::size_t parse_count(const json& value, const char* what) {
  if (!value.is_number_integer() || value.get<long long>() < 0)
    throw ParseError(std::string(what) + " must be a nonnegative integer");
  return value.get<std::size_t>();
}

std::vector<double> parse_numbers(const json& value, const char* what) {
  if (!value.is_array()) throw ParseError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : value) {
    if (!x.is_number()) throw ParseError(std::string(what) + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Threshold parse_threshold(const json& value) {
  try {
    if (value.is_number_integer()) return Threshold::rational(value.get<std::int64_t>(), 1);
    if (value.is_number()) return Threshold::real(value.get<double>());
    if (value.is_string()) return Threshold::parse(value.get<std::string>());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("bad threshold: ") + e.what());
  }
  throw ParseError("threshold must be a number or a string \"p/q\"");
}

Problem parse_problem(const json& doc) {
  const json& alpha = field(doc, "alphabet");
  std::vector<std::string> labels;
  if (alpha.is_number_integer()) {
    labels = SymbolAlphabet::of_size(parse_count(alpha, "alphabet")).labels();
  } else if (alpha.is_array()) {
    for (const auto& x : alpha) labels.push_back(x.is_string() ? x.get<std::string>() : x.dump());
  } else {
    throw ParseError("alphabet must be a list of labels or a size");
  }
  const std::size_t n = parse_count(field(doc, "n"), "n");
  const std::size_t cap =
      doc.contains("enumeration_cap") ? parse_count(doc.at("enumeration_cap"), "enumeration_cap") : kDefaultEnumerationCap;

  const json& dist = field(doc, "distance");
  const json& kind_field = field(dist, "kind");
  if (!kind_field.is_string()) throw ParseError("distance kind must be a string");
  const auto kind = kind_field.get<std::string>();

  BlockSpace block(SymbolAlphabet(std::move(labels)), n, cap);
  DistanceMeasure measure = ExplicitMatrix{};
  if (kind == "hamming") {
    measure = hamming_measure(block.q());
  } else if (kind == "additive") {
    measure = AdditivePerLetter{parse_table(field(dist, "table"), "table")};
  } else if (kind == "explicit") {
    measure = ExplicitMatrix{parse_table(field(dist, "table"), "table")};
  } else if (kind == "functional") {
    const json& name = dist.contains("name") ? dist.at("name") : field(dist, "form");
    if (!name.is_string()) throw ParseError("functional name must be a string");
    try {
      measure = Functional{functional_form_from_string(name.get<std::string>())};
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
  } else {
    throw ParseError("unknown distance kind '" + kind + "'");
  }
  return {CodeSpace(std::move(block), std::move(measure)), parse_threshold(field(doc, "d"))};
}

Problem parse_problem(std::string_view text) { return parse_problem(parse_json(text)); }

DistanceDistribution parse_distance_distribution(const json& doc) {
  const std::size_t scale = doc.contains("scale_n") ? parse_count(doc.at("scale_n"), "scale_n") : 1;
  return DistanceDistribution(parse_numbers(field(doc, "values"), "values"),
                              parse_numbers(field(doc, "probs"), "probs"), scale);
}

SimplexPoint parse_simplex_point(const json& doc, std::size_t n) {
  if (doc.is_string() && doc.get<std::string>() == "uniform") return SimplexPoint::uniform(n);
  if (doc.is_array()) {
    auto w = parse_numbers(doc, "weights");
    if (w.size() != n) throw ParseError("expected " + std::to_string(n) + " weights, got " + std::to_string(w.size()));
    return SimplexPoint::normalized(std::move(w));
  }
  if (doc.is_object() && doc.contains("weights")) return parse_simplex_point(doc.at("weights"), n);
  if (doc.is_object() && doc.contains("support")) {
    std::vector<Index> support;
    for (const auto& x : doc.at("support")) support.push_back(parse_count(x, "support index"));
    return SimplexPoint::uniform_on(n, support);
  }
  throw ParseError("distribution must be \"uniform\", a weight array, {\"weights\"} or {\"support\"}");
}

}  // namespace distspec
