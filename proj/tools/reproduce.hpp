#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace distspec::cli {

struct ReproduceOptions {
  std::optional<int> n;
  std::optional<std::string> d;
  std::optional<std::string> delta;
  std::optional<std::size_t> grid;
  std::size_t sub_grid = 0;
  int resolution = 4096;
  std::uint64_t seed = 0;
  std::uint64_t budget = 100'000'000;
  /// Contents of a distance distribution document, for second-order.
  std::optional<std::string> dist_text;
};

const std::vector<std::string>& reproduce_cases();

/// Runs one named computation and returns its payload, including a "pass"
/// field. Throws InvalidArgument for an unknown case.
nlohmann::json reproduce(const std::string& name, const ReproduceOptions& opt);

}  // namespace distspec::cli
