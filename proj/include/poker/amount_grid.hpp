#pragma once

#include <array>
#include <span>
#include <vector>

#include "poker/money.hpp"

namespace poker {

// Big-blind multiples offered to the decision maker; all-in is appended.
inline constexpr std::array<int, 8> kAmountMultiples = {0, 1, 3, 6, 10, 20, 50, 100};

// Grid amounts not above the stack, ascending, with the stack itself as the
// final all-in entry unless it already sits on the grid.
std::vector<Money> amount_menu(Money big_blind, Money stack);

// Smallest menu value >= amount; the maximum (all-in) when amount exceeds it.
Money snap_amount(Money amount, std::span<const Money> menu);

}  // namespace poker
