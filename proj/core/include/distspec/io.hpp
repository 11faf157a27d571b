#pragma once

#include <nlohmann/json.hpp>
#include <string_view>

#include "distspec/asymptotic.hpp"
#include "distspec/space.hpp"
#include "distspec/spectrum_qp.hpp"
#include "distspec/threshold.hpp"

namespace distspec {

struct Problem {
  CodeSpace space;
  Threshold d;
};

/// Problem document:
///   { "alphabet": ["a", "b"] | 2, "n": 3,
///     "distance": {"kind": "hamming"}
///               | {"kind": "additive", "table": [[...]]}
///               | {"kind": "explicit", "table": [[...]]}
///               | {"kind": "functional", "name": "euclidean-grid"},
///     "d": 2 | 0.5 | "1/2",
///     "enumeration_cap": 65536 }
/// Throws ParseError on malformed documents.
Problem parse_problem(const nlohmann::json& doc);
Problem parse_problem(std::string_view text);

Threshold parse_threshold(const nlohmann::json& value);

/// { "values": [...], "probs": [...], "scale_n": n }
DistanceDistribution parse_distance_distribution(const nlohmann::json& doc);

/// A distribution over a space of n words: "uniform", an array of weights,
/// { "weights": [...] } or { "support": [indices] } (uniform on the set).
SimplexPoint parse_simplex_point(const nlohmann::json& doc, std::size_t n);

nlohmann::json parse_json(std::string_view text);

}  // namespace distspec
