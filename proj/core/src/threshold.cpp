#include "distspec/threshold.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "distspec/errors.hpp"

namespace distspec {

namespace {

__extension__ using i128 = __int128;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw InvalidArgument("malformed integer in threshold: '" + std::string(text) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

std::int64_t Rational::floor() const { return floor_div(num, den); }
std::int64_t Rational::ceil() const { return -floor_div(-num, den); }

Threshold Threshold::real(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("threshold must be finite");
  double scaled = value;
  std::int64_t den = 1;
  for (int k = 0; k <= 40; ++k) {
    if (std::abs(scaled) >= 4.0e18) break;
    if (scaled == std::floor(scaled)) return Threshold(value, Rational::make(static_cast<std::int64_t>(scaled), den));
    scaled *= 2.0;
    den *= 2;
  }
  return Threshold(value, std::nullopt);
}

Threshold Threshold::rational(std::int64_t num, std::int64_t den) {
  const Rational r = Rational::make(num, den);
  return Threshold(r.to_double(), r);
}

Threshold Threshold::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw InvalidArgument("empty threshold");
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return rational(parse_int(trim(text.substr(0, slash))), parse_int(trim(text.substr(slash + 1))));

  // Plain decimal literals are kept exact: "0.1" becomes 1/10.
  const bool simple_decimal = text.find_first_not_of("+-0123456789.") == std::string_view::npos &&
                              text.find_first_of("0123456789") != std::string_view::npos;
  if (simple_decimal) {
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) return rational(parse_int(text), 1);
    std::string digits(text.substr(0, dot));
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() <= 17 && frac.find_first_of("+-.") == std::string_view::npos) {
      digits += frac;
      if (digits.empty() || digits == "-" || digits == "+") digits += "0";
      std::int64_t den = 1;
      for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
      try {
        return rational(parse_int(digits), den);
      } catch (const InvalidArgument&) {
      }
    }
  }
  double v = 0.0;
  std::istringstream in{std::string(text)};
  if (!(in >> v) || !in.eof()) throw InvalidArgument("malformed threshold: '" + std::string(text) + "'");
  return real(v);
}

bool Threshold::exceeds(double x) const {
  if (exact_) return static_cast<long double>(x) * exact_->den < static_cast<long double>(exact_->num);
  return x < value_;
}

bool Threshold::exceeds_scaled(std::int64_t units, std::int64_t scale) const {
  if (exact_) return static_cast<i128>(units) * exact_->den < static_cast<i128>(exact_->num) * scale;
  return static_cast<long double>(units) < static_cast<long double>(value_) * scale;
}

bool Threshold::exceeds_scaled_sqrt(std::int64_t sq_units, std::int64_t scale) const {
  if (exact_) {
    if (exact_->num <= 0) return false;
    const i128 lhs = static_cast<i128>(sq_units) * exact_->den * exact_->den;
    const i128 rhs = static_cast<i128>(exact_->num) * exact_->num * scale * scale;
    return lhs < rhs;
  }
  return std::sqrt(static_cast<long double>(sq_units)) < static_cast<long double>(value_) * scale;
}

std::int64_t Threshold::ceil() const {
  if (exact_) return exact_->ceil();
  return static_cast<std::int64_t>(std::ceil(value_));
}

std::string Threshold::to_string() const {
  if (exact_) {
    if (exact_->den == 1) return std::to_string(exact_->num);
    return std::to_string(exact_->num) + "/" + std::to_string(exact_->den);
  }
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

}  // namespace distspec
