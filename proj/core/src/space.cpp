#include "distspec/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "distspec/errors.hpp"

namespace distspec {

SymbolAlphabet::SymbolAlphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InvalidArgument("alphabet must contain at least one symbol");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw InvalidArgument("alphabet labels must be pairwise distinct");
}

SymbolAlphabet SymbolAlphabet::of_size(std::size_t q) {
  std::vector<std::string> labels;
  labels.reserve(q);
  for (std::size_t k = 0; k < q; ++k) labels.push_back(std::to_string(k));
  return SymbolAlphabet(std::move(labels));
}

BlockSpace::BlockSpace(SymbolAlphabet alphabet, std::size_t n, std::size_t enumeration_cap)
    : alphabet_(std::move(alphabet)), n_(n), size_(1), cap_(enumeration_cap) {
  if (n_ == 0) throw InvalidArgument("block length must be positive");
  if (cap_ == 0) throw InvalidArgument("enumeration cap must be positive");
  const std::size_t q = alphabet_.size();
  for (std::size_t p = 0; p < n_; ++p) {
    if (size_ > std::numeric_limits<std::size_t>::max() / q) {
      size_ = std::numeric_limits<std::size_t>::max();
      break;
    }
    size_ *= q;
  }
}

void BlockSpace::require_enumerable() const {
  if (!enumerable())
    throw EnumerationCapExceeded("block space has " + (size_ == std::numeric_limits<std::size_t>::max()
                                                           ? std::string("more than 2^64")
                                                           : std::to_string(size_)) +
                                 " words, above the enumeration cap " + std::to_string(cap_));
}

std::vector<std::uint32_t> BlockSpace::letters(Index i) const {
  std::vector<std::uint32_t> out(n_);
  const std::size_t base = alphabet_.size();
  for (std::size_t p = 0; p < n_; ++p) {
    out[p] = static_cast<std::uint32_t>(i % base);
    i /= base;
  }
  return out;
}

Index BlockSpace::index_of(const std::vector<std::uint32_t>& letters) const {
  if (letters.size() != n_) throw InvalidArgument("word length does not match block length");
  Index i = 0;
  for (std::size_t p = n_; p-- > 0;) {
    if (letters[p] >= q()) throw InvalidArgument("letter outside the alphabet");
    i = i * q() + letters[p];
  }
  return i;
}

std::string BlockSpace::word_label(Index i) const {
  const auto word = letters(i);
  const bool short_labels = std::all_of(alphabet_.labels().begin(), alphabet_.labels().end(),
                                        [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t p = 0; p < n_; ++p) {
    if (!short_labels && p > 0) out += ',';
    out += alphabet_.label(word[p]);
  }
  return out;
}

DistanceMeasure hamming_measure(std::size_t q) {
  Table t(q, std::vector<double>(q, 1.0));
  for (std::size_t k = 0; k < q; ++k) t[k][k] = 0.0;
  return AdditivePerLetter{std::move(t)};
}

const char* to_string(FunctionalForm form) {
  switch (form) {
    case FunctionalForm::BinaryRepresentation: return "binary-representation";
    case FunctionalForm::RectilinearModGrid: return "rectilinear-mod-grid";
    case FunctionalForm::EuclideanGrid: return "euclidean-grid";
  }
  return "?";
}

FunctionalForm functional_form_from_string(const std::string& name) {
  if (name == "binary-representation") return FunctionalForm::BinaryRepresentation;
  if (name == "rectilinear-mod-grid") return FunctionalForm::RectilinearModGrid;
  if (name == "euclidean-grid") return FunctionalForm::EuclideanGrid;
  throw InvalidArgument("unknown functional distance '" + name + "'");
}

namespace {

void check_square(const Table& t, std::size_t expected, const char* what) {
  if (t.size() != expected) throw InvalidArgument(std::string(what) + " must have " + std::to_string(expected) + " rows");
  for (const auto& row : t) {
    if (row.size() != expected)
      throw InvalidArgument(std::string(what) + " must have " + std::to_string(expected) + " columns");
    for (double v : row)
      if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " entries must be finite");
  }
}

bool is_symmetric(const Table& t) {
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b)
      if (t[a][b] != t[b][a]) return false;
  return true;
}

/// Diagonal must equal the global minimum.
double validated_minimum(const Table& t, const char* what) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& row : t)
    for (double v : row) lo = std::min(lo, v);
  for (std::size_t a = 0; a < t.size(); ++a)
    if (t[a][a] != lo)
      throw InvalidArgument(std::string(what) + ": distance from symbol " + std::to_string(a) +
                            " to itself is not the minimum distance");
  return lo;
}

bool all_integral(const Table& t) {
  for (const auto& row : t)
    for (double v : row)
      if (v != std::floor(v) || std::abs(v) > 1e12) return false;
  return true;
}

}  // namespace

CodeSpace::CodeSpace(BlockSpace space, DistanceMeasure measure) : space_(std::move(space)), measure_(std::move(measure)) {
  const std::size_t q = space_.q();
  if (auto* add = std::get_if<AdditivePerLetter>(&measure_)) {
    check_square(add->table, q, "per-letter distance table");
    // For a coordinate sum, mu(u,u) = min for every word iff every letter's
    // self-distance is the letter-level minimum.
    mu_min_ = static_cast<double>(space_.n()) * validated_minimum(add->table, "per-letter distance table");
    symmetric_ = is_symmetric(add->table);
    exact_ = all_integral(add->table);
  } else if (auto* ex = std::get_if<ExplicitMatrix>(&measure_)) {
    space_.require_enumerable();
    check_square(ex->table, space_.size(), "explicit distance matrix");
    mu_min_ = validated_minimum(ex->table, "explicit distance matrix");
    symmetric_ = is_symmetric(ex->table);
    exact_ = all_integral(ex->table);
  } else {
    const auto form = std::get<Functional>(measure_).form;
    if (form == FunctionalForm::BinaryRepresentation) {
      if (q != 2) throw InvalidArgument("binary-representation distance needs a binary alphabet");
      if (space_.n() > 62) throw InvalidArgument("binary-representation distance supports n <= 62");
    }
    mu_min_ = 0.0;
    symmetric_ = true;
    exact_ = true;
  }
}

void CodeSpace::check_index(Index i) const {
  if (i >= space_.size()) throw InvalidArgument("codeword index " + std::to_string(i) + " out of range");
}

std::int64_t CodeSpace::grid_units(Index i, Index j) const {
  const auto m = static_cast<std::int64_t>(space_.q());
  const bool circular = std::get<Functional>(measure_).form == FunctionalForm::RectilinearModGrid;
  std::int64_t acc = 0;
  for (std::size_t p = 0; p < space_.n(); ++p) {
    const auto a = static_cast<std::int64_t>(i % space_.q());
    const auto b = static_cast<std::int64_t>(j % space_.q());
    i /= space_.q();
    j /= space_.q();
    const std::int64_t diff = a > b ? a - b : b - a;
    acc += circular ? std::min(diff, m - diff) : diff * diff;
  }
  return acc;
}

double CodeSpace::block_distance(Index i, Index j) const {
  check_index(i);
  check_index(j);
  if (auto* add = std::get_if<AdditivePerLetter>(&measure_)) {
    double acc = 0.0;
    const std::size_t q = space_.q();
    for (std::size_t p = 0; p < space_.n(); ++p) {
      acc += add->table[i % q][j % q];
      i /= q;
      j /= q;
    }
    return acc;
  }
  if (auto* ex = std::get_if<ExplicitMatrix>(&measure_)) return ex->table[i][j];
  const auto m = static_cast<double>(space_.q());
  switch (std::get<Functional>(measure_).form) {
    case FunctionalForm::BinaryRepresentation:
      return static_cast<double>(i > j ? i - j : j - i);
    case FunctionalForm::RectilinearModGrid:
      return static_cast<double>(grid_units(i, j)) / m;
    case FunctionalForm::EuclideanGrid:
      return std::sqrt(static_cast<double>(grid_units(i, j))) / m;
  }
  return 0.0;
}

double CodeSpace::symmetrized_distance(Index i, Index j) const {
  const double forward = block_distance(i, j);
  if (symmetric_) return forward;
  return std::min(forward, block_distance(j, i));
}

bool CodeSpace::within(Index i, Index j, const Threshold& d) const {
  if (auto* f = std::get_if<Functional>(&measure_)) {
    check_index(i);
    check_index(j);
    const auto m = static_cast<std::int64_t>(space_.q());
    switch (f->form) {
      case FunctionalForm::BinaryRepresentation:
        return d.exceeds_scaled(static_cast<std::int64_t>(i > j ? i - j : j - i), 1);
      case FunctionalForm::RectilinearModGrid:
        return d.exceeds_scaled(grid_units(i, j), m);
      case FunctionalForm::EuclideanGrid:
        return d.exceeds_scaled_sqrt(grid_units(i, j), m);
    }
  }
  return d.exceeds(symmetrized_distance(i, j));
}

double CodeSpace::max_distance() const {
  const auto n = static_cast<double>(space_.n());
  if (auto* add = std::get_if<AdditivePerLetter>(&measure_)) {
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& row : add->table)
      for (double v : row) hi = std::max(hi, v);
    return n * hi;
  }
  if (auto* ex = std::get_if<ExplicitMatrix>(&measure_)) {
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& row : ex->table)
      for (double v : row) hi = std::max(hi, v);
    return hi;
  }
  const auto m = static_cast<double>(space_.q());
  switch (std::get<Functional>(measure_).form) {
    case FunctionalForm::BinaryRepresentation: return std::ldexp(1.0, static_cast<int>(space_.n())) - 1.0;
    case FunctionalForm::RectilinearModGrid: return n * std::floor(m / 2.0) / m;
    case FunctionalForm::EuclideanGrid: return std::sqrt(n) * (m - 1.0) / m;
  }
  return 0.0;
}

}  // namespace distspec
