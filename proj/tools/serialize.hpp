#pragma once

#include <nlohmann/json.hpp>

#include "distspec/asymptotic.hpp"
#include "distspec/bounds.hpp"
#include "distspec/code_set.hpp"
#include "distspec/greedy_cover.hpp"
#include "distspec/spectrum_qp.hpp"
#include "distspec/zero_error.hpp"

namespace distspec::cli {

using nlohmann::json;

/// Finite doubles as numbers; infinities and NaN as the strings "inf",
/// "-inf" and "nan".
json number(double x);

json to_json(const CodeSet& code, const BlockSpace* space = nullptr);
json to_json(const SpectrumResult& r);
json to_json(const Theorem1Report& r);
json to_json(const CoverTrace& t, const BlockSpace* space = nullptr);
json to_json(const CoverCheck& c);
json to_json(const BoundReport& r);
json to_json(const Example1Result& r);
json to_json(const GridOptimum& g);
json to_json(const ZeroErrorReport& r, bool bits);
json to_json(const RateReport& r);
json to_json(const ChernoffReport& r);

}  // namespace distspec::cli
