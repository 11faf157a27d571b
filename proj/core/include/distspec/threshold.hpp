#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace distspec {

/// A reduced fraction num/den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::int64_t floor() const;
  std::int64_t ceil() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Distance threshold d. Holds an exact rational whenever one is known, so
/// that strict comparisons against integer-scaled distances are decided
/// without rounding.
class Threshold {
 public:
  /// Doubles that are dyadic with a small denominator (0.5, 0.375, 3) are
  /// captured exactly; anything else only keeps the double.
  static Threshold real(double value);
  static Threshold rational(std::int64_t num, std::int64_t den);
  /// Accepts "p/q", an integer or a decimal literal.
  static Threshold parse(std::string_view text);

  double value() const { return value_; }
  const std::optional<Rational>& exact() const { return exact_; }

  /// x < d for a distance given as a double.
  bool exceeds(double x) const;
  /// units / scale < d, decided exactly when d is rational.
  bool exceeds_scaled(std::int64_t units, std::int64_t scale) const;
  /// sqrt(sq_units) / scale < d, decided exactly when d is rational.
  bool exceeds_scaled_sqrt(std::int64_t sq_units, std::int64_t scale) const;

  /// Smallest integer >= d.
  std::int64_t ceil() const;
  std::string to_string() const;

 private:
  Threshold(double value, std::optional<Rational> exact) : value_(value), exact_(exact) {}

  double value_;
  std::optional<Rational> exact_;
};

}  // namespace distspec
