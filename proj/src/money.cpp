#include "poker/money.hpp"

#include <cmath>
#include <cstdlib>

namespace poker {

Money parse_money(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  if (!s.empty() && s.front() == '$') s.remove_prefix(1);
  if (s.empty()) throw MoneyFormatError("empty amount '" + std::string(text) + "'");

  std::int64_t whole = 0;
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool seen_dot = false;
  bool seen_digit = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_dot) throw MoneyFormatError("malformed amount '" + std::string(text) + "'");
      seen_dot = true;
      continue;
    }
    if (c == ',' && !seen_dot) continue;  // thousands separator
    if (c < '0' || c > '9') throw MoneyFormatError("malformed amount '" + std::string(text) + "'");
    seen_digit = true;
    if (seen_dot) {
      if (++frac_digits > 2) {
        if (c != '0') throw MoneyFormatError("amount '" + std::string(text) + "' has sub-cent precision");
        frac_digits = 2;
        continue;
      }
      frac = frac * 10 + (c - '0');
    } else {
      whole = whole * 10 + (c - '0');
      if (whole > 1'000'000'000'000LL) throw MoneyFormatError("amount '" + std::string(text) + "' out of range");
    }
  }
  if (!seen_digit) throw MoneyFormatError("malformed amount '" + std::string(text) + "'");
  if (frac_digits == 1) frac *= 10;
  std::int64_t minor = whole * 100 + frac;
  return Money::from_minor(negative ? -minor : minor);
}

Money money_from_double(double value) { return Money::from_minor(std::llround(value * 100.0)); }

double to_double(Money m) { return static_cast<double>(m.minor()) / 100.0; }

std::string format_money(Money m) {
  std::int64_t v = m.minor();
  std::string out;
  if (v < 0) {
    out.push_back('-');
    v = -v;
  }
  out += std::to_string(v / 100);
  std::int64_t cents = v % 100;
  if (cents != 0) {
    out.push_back('.');
    out.push_back(static_cast<char>('0' + cents / 10));
    if (cents % 10 != 0) out.push_back(static_cast<char>('0' + cents % 10));
  }
  return out;
}

std::string format_money_log(Money m) {
  std::int64_t v = m.minor();
  std::string out;
  if (v < 0) {
    out.push_back('-');
    v = -v;
  }
  out += std::to_string(v / 100);
  std::int64_t cents = v % 100;
  if (cents != 0) {
    out.push_back('.');
    out.push_back(static_cast<char>('0' + cents / 10));
    out.push_back(static_cast<char>('0' + cents % 10));
  }
  return out;
}

}  // namespace poker
