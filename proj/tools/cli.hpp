#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace distspec::cli {

/// Parses `args` (without the program name), runs the subcommand and writes
/// a run record as JSON to `out`. Returns 0 on success, 1 on domain errors
/// and 2 on usage errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

}  // namespace distspec::cli
