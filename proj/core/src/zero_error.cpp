#include "distspec/zero_error.hpp"

#include <cmath>
#include <sstream>

#include "distspec/errors.hpp"

namespace distspec {

namespace {

constexpr double kRowTolerance = 1e-9;
constexpr double kPositive = 1e-12;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Entry {
  double value = 0.0;
  bool positive = false;
  bool exact = false;
};

bool parse_entry(const std::string& text, Entry& out) {
  if (text.empty()) return false;
  const auto slash = text.find('/');
  auto parse_int = [](const std::string& s, long long& v) {
    std::size_t used = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      return false;
    }
    return used == s.size();
  };
  if (slash != std::string::npos) {
    long long num = 0, den = 0;
    if (!parse_int(trim(text.substr(0, slash)), num) || !parse_int(trim(text.substr(slash + 1)), den) || den <= 0)
      return false;
    out = {static_cast<double>(num) / static_cast<double>(den), num > 0, true};
    return num >= 0;
  }
  long long whole = 0;
  if (parse_int(text, whole)) {
    out = {static_cast<double>(whole), whole > 0, true};
    return true;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    return false;
  }
  if (used != text.size()) return false;
  out = {v, v > kPositive, false};
  return true;
}

}  // namespace

ChannelModel::ChannelModel(std::vector<std::string> input_labels, std::vector<std::string> output_labels,
                           std::vector<std::vector<double>> matrix)
    : inputs_(std::move(input_labels)), outputs_(std::move(output_labels)), matrix_(std::move(matrix)) {
  positive_.assign(matrix_.size(), {});
  for (std::size_t x = 0; x < matrix_.size(); ++x)
    for (double v : matrix_[x]) positive_[x].push_back(v > kPositive);
  validate();
}

ChannelModel::ChannelModel(std::vector<std::string> input_labels, std::vector<std::string> output_labels,
                           std::vector<std::vector<double>> matrix, std::vector<std::vector<bool>> positive)
    : inputs_(std::move(input_labels)),
      outputs_(std::move(output_labels)),
      matrix_(std::move(matrix)),
      positive_(std::move(positive)),
      exact_(true) {
  validate();
}

void ChannelModel::validate() {
  if (inputs_.empty() || outputs_.empty()) throw InvalidArgument("channel needs at least one input and output");
  if (matrix_.size() != inputs_.size() || positive_.size() != inputs_.size())
    throw InvalidArgument("channel matrix needs one row per input");
  for (std::size_t x = 0; x < matrix_.size(); ++x) {
    if (matrix_[x].size() != outputs_.size() || positive_[x].size() != outputs_.size())
      throw InvalidArgument("channel row " + std::to_string(x) + " has the wrong length");
    double total = 0.0;
    for (double v : matrix_[x]) {
      if (!(v >= 0.0) || !std::isfinite(v))
        throw InvalidArgument("channel row " + std::to_string(x) + " has a negative or non-finite entry");
      total += v;
    }
    if (std::abs(total - 1.0) > kRowTolerance)
      throw InvalidArgument("channel row " + std::to_string(x) + " sums to " + std::to_string(total));
  }
}

ChannelModel ChannelModel::parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split(line));
  }
  if (rows.size() < 2) throw InvalidArgument("channel CSV needs a header row and at least one input row");
  const auto& header = rows.front();
  const std::size_t width = rows[1].size();

  auto build = [&](bool labelled) {
    std::vector<std::string> outputs = header;
    if (labelled && header.size() == width) outputs.erase(outputs.begin());
    const std::size_t first = labelled ? 1 : 0;
    if (outputs.size() + first != width)
      throw InvalidArgument("channel CSV header has " + std::to_string(header.size()) + " fields, rows have " +
                            std::to_string(width));
    std::vector<std::string> inputs;
    std::vector<std::vector<double>> matrix;
    std::vector<std::vector<bool>> positive;
    bool exact = true;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      if (row.size() != width)
        throw InvalidArgument("channel CSV row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                              " fields, expected " + std::to_string(width));
      inputs.push_back(labelled ? row.front() : std::to_string(r - 1));
      matrix.emplace_back();
      positive.emplace_back();
      for (std::size_t c = first; c < width; ++c) {
        Entry e;
        if (!parse_entry(row[c], e))
          throw InvalidArgument("channel CSV row " + std::to_string(r) + ": cannot parse '" + row[c] + "'");
        matrix.back().push_back(e.value);
        positive.back().push_back(e.positive);
        exact = exact && e.exact;
      }
    }
    if (exact) return ChannelModel(std::move(inputs), std::move(outputs), std::move(matrix), std::move(positive));
    return ChannelModel(std::move(inputs), std::move(outputs), std::move(matrix));
  };

  // The label column is recognised by an empty corner cell, an extra field
  // or a non-numeric first field. Numeric labels under a named corner cell
  // are ambiguous; the unlabelled reading wins if its rows are stochastic.
  bool numeric_first = true;
  for (std::size_t r = 1; r < rows.size() && numeric_first; ++r) {
    Entry probe;
    numeric_first = parse_entry(rows[r].front(), probe);
  }
  if (!numeric_first || header.front().empty() || width == header.size() + 1) return build(true);
  try {
    return build(false);
  } catch (const InvalidArgument&) {
    return build(true);
  }
}

AdditivePerLetter confusability_from_channel(const ChannelModel& ch) {
  const std::size_t q = ch.inputs();
  Table t(q, std::vector<double>(q, 1.0));
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      for (std::size_t y = 0; y < ch.outputs(); ++y)
        if (ch.positive(a, y) && ch.positive(b, y)) {
          t[a][b] = 0.0;
          break;
        }
  // Every row has some positive entry, so the diagonal is already 0.
  return {std::move(t)};
}

CodeSpace product_space(const ChannelModel& ch, std::size_t n, std::size_t enumeration_cap) {
  if (n < 1) throw InvalidArgument("block length must be at least 1");
  return CodeSpace(BlockSpace(SymbolAlphabet(ch.input_labels()), n, enumeration_cap), confusability_from_channel(ch));
}

ConfusabilityMatrix product_confusability(const ChannelModel& ch, std::size_t n, std::size_t enumeration_cap) {
  return ConfusabilityMatrix::build(product_space(ch, n, enumeration_cap), Threshold::rational(1, 1));
}

ZeroErrorReport zero_error_lower_bound(const ChannelModel& ch, std::size_t n_max, const SearchConfig& search,
                                       const QpConfig& qp, std::size_t enumeration_cap) {
  if (n_max < 1) throw InvalidArgument("n_max must be at least 1");
  ZeroErrorReport report;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const CodeSpace space = product_space(ch, n, enumeration_cap);
    if (!space.space().enumerable()) {
      report.truncated = true;
      break;
    }
    const std::size_t m = exact_M(space, Threshold::rational(1, 1), search);
    const double rate = std::log(static_cast<double>(m)) / static_cast<double>(n);
    report.per_n.push_back({n, m, rate});
    report.best_rate = std::max(report.best_rate, rate);
  }
  report.korn = korn_bound(ch, qp);
  return report;
}

double korn_bound(const ChannelModel& ch, const QpConfig& qp) {
  const auto conf = ConfusabilityMatrix::build(product_space(ch, 1), Threshold::rational(1, 1));
  const auto res = minimize_spectrum(conf, qp);
  return std::max(0.0, -std::log(res.value));
}

}  // namespace distspec
