#include "distspec/code_set.hpp"

#include <algorithm>

#include "distspec/errors.hpp"

namespace distspec {

namespace {
void normalise(std::vector<Index>& indices, std::size_t n) {
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw InvalidArgument("code contains a repeated codeword");
  if (!indices.empty() && indices.back() >= n) throw InvalidArgument("codeword index out of range");
}
}  // namespace

CodeSet CodeSet::certify(std::vector<Index> indices, const ConfusabilityMatrix& conf) {
  normalise(indices, conf.size());
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = a + 1; b < indices.size(); ++b)
      if (conf.test(indices[a], indices[b]))
        throw InvalidArgument("codewords " + std::to_string(indices[a]) + " and " + std::to_string(indices[b]) +
                              " are confusable");
  const double d = indices.size() < 2 ? std::numeric_limits<double>::infinity() : conf.threshold().value();
  return CodeSet(std::move(indices), d);
}

CodeSet CodeSet::certify(std::vector<Index> indices, const CodeSpace& space, const Threshold& d) {
  normalise(indices, space.size());
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = a + 1; b < indices.size(); ++b) {
      if (space.within(indices[a], indices[b], d))
        throw InvalidArgument("codewords " + std::to_string(indices[a]) + " and " + std::to_string(indices[b]) +
                              " are closer than d = " + d.to_string());
      lo = std::min(lo, space.symmetrized_distance(indices[a], indices[b]));
    }
  return CodeSet(std::move(indices), lo);
}

}  // namespace distspec
