#include "rohlin/turns.hpp"

#include <charconv>
#include <cstdint>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rohlin/error.hpp"

namespace rohlin {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw Error(Errc::kInvalidArgument, "not a rational angle: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Turns::Turns(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(Errc::kInvalidArgument, "zero denominator in angle");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Turns Turns::parse(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Turns(parse_int(text.substr(0, slash), whole), parse_int(text.substr(slash + 1), whole));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    bool negative = !text.empty() && text.front() == '-';
    std::string_view int_part = text.substr(negative ? 1 : 0, dot - (negative ? 1 : 0));
    std::string_view frac_part = text.substr(dot + 1);
    if (frac_part.size() > 17 || (int_part.empty() && frac_part.empty())) {
      throw Error(Errc::kInvalidArgument, "not a rational angle: '" + std::string(whole) + "'");
    }
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    const std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, whole);
    const std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, whole);
    if (ip < 0 || fp < 0) {
      throw Error(Errc::kInvalidArgument, "not a rational angle: '" + std::string(whole) + "'");
    }
    if (ip > (INT64_MAX - fp) / den) {
      throw Error(Errc::kInvalidArgument, "angle out of range: '" + std::string(whole) + "'");
    }
    const std::int64_t num = ip * den + fp;
    return Turns(negative ? -num : num, den);
  }
  return Turns(parse_int(text, whole), 1);
}

Turns Turns::wrapped() const {
  std::int64_t r = num_ % den_;
  if (r < 0) r += den_;
  return Turns(r, den_);
}

Complex Turns::phase() const { return root_of_unity(num_, den_); }

std::string Turns::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Complex root_of_unity(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw Error(Errc::kInvalidArgument, "root_of_unity needs a positive denominator");
  std::int64_t r = num % den;
  if (r < 0) r += den;
  if ((4 * static_cast<__int128>(r)) % den == 0) {
    switch (static_cast<int>((4 * static_cast<__int128>(r)) / den)) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return std::polar(1.0, angle);
}

double turns_of(Complex z) {
  double t = std::arg(z) / (2.0 * std::numbers::pi);
  if (t < 0.0) t += 1.0;
  if (t >= 1.0) t -= 1.0;
  return t;
}

}  // namespace rohlin
