#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace rohlin {

using Complex = std::complex<double>;

/// An exact rational angle measured in turns (fractions of a full circle).
/// Always stored reduced with a positive denominator.
class Turns {
 public:
  constexpr Turns() = default;
  Turns(std::int64_t num, std::int64_t den);

  /// Accepts "s/q", a signed integer, or a finite decimal such as "0.125".
  static Turns parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  /// Representative in [0, 1).
  Turns wrapped() const;
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  Complex phase() const;
  std::string to_string() const;

  friend bool operator==(const Turns&, const Turns&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// exp(2*pi*i*num/den), exact at multiples of a quarter turn.
Complex root_of_unity(std::int64_t num, std::int64_t den);

/// Angle of z in turns, in [0, 1).
double turns_of(Complex z);

}  // namespace rohlin
