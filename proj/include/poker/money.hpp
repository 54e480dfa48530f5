#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace poker {

// Amount of money in integer minor units (cents). All accounting is exact.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money from_minor(std::int64_t minor) { return Money(minor); }

  constexpr std::int64_t minor() const { return minor_; }
  constexpr bool is_zero() const { return minor_ == 0; }

  constexpr Money& operator+=(Money o) {
    minor_ += o.minor_;
    return *this;
  }
  constexpr Money& operator-=(Money o) {
    minor_ -= o.minor_;
    return *this;
  }
  friend constexpr Money operator+(Money a, Money b) { return Money(a.minor_ + b.minor_); }
  friend constexpr Money operator-(Money a, Money b) { return Money(a.minor_ - b.minor_); }
  friend constexpr Money operator-(Money a) { return Money(-a.minor_); }
  friend constexpr Money operator*(Money a, std::int64_t k) { return Money(a.minor_ * k); }
  friend constexpr Money operator*(std::int64_t k, Money a) { return Money(a.minor_ * k); }

  friend constexpr auto operator<=>(Money, Money) = default;

 private:
  constexpr explicit Money(std::int64_t minor) : minor_(minor) {}
  std::int64_t minor_ = 0;
};

class MoneyFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Accepts "0.05", "$0.05", "3", "1.5". At most two fractional digits.
Money parse_money(std::string_view text);

// Nearest minor unit; used for JSON numbers.
Money money_from_double(double value);
double to_double(Money m);

// Trailing zeros stripped: 0.1, 1, 3.92. This is the prompt rendering.
std::string format_money(Money m);

// Hand-history rendering: whole amounts bare ("1"), otherwise two decimals ("0.10").
std::string format_money_log(Money m);

}  // namespace poker
