#include "poker/amount_grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace poker {

std::vector<Money> amount_menu(Money big_blind, Money stack) {
  if (big_blind <= Money{}) throw std::invalid_argument("big blind must be positive");
  if (stack < Money{}) throw std::invalid_argument("stack must be non-negative");
  std::vector<Money> menu;
  for (int m : kAmountMultiples) {
    Money v = big_blind * m;
    if (v <= stack) menu.push_back(v);
  }
  if (menu.back() != stack) menu.push_back(stack);
  return menu;
}

Money snap_amount(Money amount, std::span<const Money> menu) {
  if (menu.empty()) throw std::invalid_argument("empty amount menu");
  auto it = std::lower_bound(menu.begin(), menu.end(), amount);
  return it == menu.end() ? menu.back() : *it;
}

}  // namespace poker
