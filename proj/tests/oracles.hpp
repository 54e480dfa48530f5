// Reference implementations used only by tests. They share no code with the
// library beyond the card types.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "poker/cards.hpp"
#include "poker/game_engine.hpp"

namespace oracle {

using poker::Card;
using poker::HandCategory;

// Category and tiebreak ranks of exactly five cards.
struct Score {
  HandCategory category = HandCategory::HighCard;
  std::vector<int> ranks;

  friend bool operator==(const Score&, const Score&) = default;
  friend bool operator<(const Score& a, const Score& b) {
    if (a.category != b.category) return a.category < b.category;
    return a.ranks < b.ranks;
  }
};

inline Score score_five(const std::array<Card, 5>& cards) {
  std::map<int, int> count;
  for (Card c : cards) ++count[c.rank];
  // Groups by size, then rank, largest first.
  std::vector<std::pair<int, int>> groups;
  for (auto [r, n] : count) groups.push_back({n, r});
  std::sort(groups.rbegin(), groups.rend());

  bool flush = std::all_of(cards.begin(), cards.end(), [&](Card c) { return c.suit == cards[0].suit; });
  int straight_high = 0;
  if (count.size() == 5) {
    int lo = count.begin()->first;
    int hi = count.rbegin()->first;
    if (hi - lo == 4) straight_high = hi;
    if (hi == 14 && count.count(2) && count.count(3) && count.count(4) && count.count(5)) straight_high = 5;
  }

  Score s;
  if (straight_high && flush) {
    s.category = straight_high == 14 ? HandCategory::RoyalFlush : HandCategory::StraightFlush;
    s.ranks = {straight_high};
    return s;
  }
  for (auto [n, r] : groups) s.ranks.push_back(r);
  if (groups[0].first == 4) {
    s.category = HandCategory::FourOfAKind;
  } else if (groups[0].first == 3 && groups[1].first == 2) {
    s.category = HandCategory::FullHouse;
  } else if (flush) {
    s.category = HandCategory::Flush;
  } else if (straight_high) {
    s.category = HandCategory::Straight;
    s.ranks = {straight_high};
  } else if (groups[0].first == 3) {
    s.category = HandCategory::ThreeOfAKind;
  } else if (groups[0].first == 2 && groups[1].first == 2) {
    s.category = HandCategory::TwoPair;
  } else if (groups[0].first == 2) {
    s.category = HandCategory::OnePair;
  } else {
    s.category = HandCategory::HighCard;
  }
  return s;
}

// Best of the 21 five-card subsets of seven cards.
inline Score best_of_seven(const std::array<Card, 7>& cards) {
  Score best;
  bool first = true;
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b) {
      std::array<Card, 5> five;
      int k = 0;
      for (int i = 0; i < 7; ++i)
        if (i != a && i != b) five[k++] = cards[i];
      Score s = score_five(five);
      if (first || best < s) best = s;
      first = false;
    }
  return best;
}

// Exact win share by enumerating every board completion and every ordered
// assignment of opponent hole cards from `deck` minus the known cards.
inline double exhaustive_equity(const poker::HoleCards& hole, const std::vector<Card>& board, int opponents,
                                const std::vector<Card>& deck) {
  std::vector<Card> rest;
  for (Card c : deck)
    if (c != hole[0] && c != hole[1] && std::find(board.begin(), board.end(), c) == board.end()) rest.push_back(c);
  const int n = static_cast<int>(rest.size());
  const int missing = 5 - static_cast<int>(board.size());

  double total = 0;
  double weight = 0;
  std::vector<bool> used(n, false);
  std::vector<Card> full = board;
  std::vector<std::array<Card, 2>> opp(opponents);

  auto settle = [&] {
    auto value = [&](Card a, Card b) {
      std::array<Card, 7> seven{a, b, full[0], full[1], full[2], full[3], full[4]};
      return poker::evaluate_cards(seven);
    };
    poker::HandValue hero = value(hole[0], hole[1]);
    int ties = 0;
    for (const auto& o : opp) {
      poker::HandValue v = value(o[0], o[1]);
      if (v > hero) return 0.0;
      if (v == hero) ++ties;
    }
    return 1.0 / (ties + 1);
  };

  auto assign = [&](auto&& self, int o) -> void {
    if (o == opponents) {
      total += settle();
      weight += 1;
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      for (int j = i + 1; j < n; ++j) {
        if (used[j]) continue;
        used[i] = used[j] = true;
        opp[o] = {rest[i], rest[j]};
        self(self, o + 1);
        used[i] = used[j] = false;
      }
    }
  };

  auto complete = [&](auto&& self, int from, int left) -> void {
    if (left == 0) {
      assign(assign, 0);
      return;
    }
    for (int i = from; i < n; ++i) {
      used[i] = true;
      full.push_back(rest[i]);
      self(self, i + 1, left - 1);
      full.pop_back();
      used[i] = false;
    }
  };
  complete(complete, 0, missing);
  return total / weight;
}

// A hand-built all-in scenario with hand-computed outcomes. Blinds 1/2 minor
// units, dealer at seat 1.
struct SidePotFixture {
  std::string name;
  std::vector<std::int64_t> stacks;  // seats 1..n
  std::map<int, std::pair<std::string, std::string>> holes;
  std::vector<std::string> board;
  // seat, kind, street total for bet/raise
  std::vector<std::tuple<int, poker::ActionKind, std::int64_t>> actions;
  std::map<int, std::int64_t> payouts;  // only non-zero entries
  std::map<int, std::int64_t> deltas;   // every seat
};

inline std::vector<SidePotFixture> side_pot_fixtures() {
  using K = poker::ActionKind;
  const std::vector<std::string> board_a = {"2c", "7d", "9s", "Jc", "3d"};
  const std::vector<std::string> board_b = {"2c", "7d", "9s", "4h", "3s"};
  std::vector<SidePotFixture> f;

  auto three_way = [&](std::string name, std::map<int, std::pair<std::string, std::string>> holes,
                       std::map<int, std::int64_t> payouts) {
    SidePotFixture x;
    x.name = std::move(name);
    x.stacks = {50, 100, 150};
    x.holes = std::move(holes);
    x.board = board_a;
    x.actions = {{1, K::AllIn, 0}, {2, K::AllIn, 0}, {3, K::Call, 0}};
    x.payouts = payouts;
    x.deltas = {{1, payouts[1] - 50}, {2, payouts[2] - 100}, {3, payouts[3] - 100}};
    return x;
  };
  f.push_back(three_way("short stack best", {{1, {"As", "Ah"}}, {2, {"Ks", "Kh"}}, {3, {"Qs", "Qh"}}},
                        {{1, 150}, {2, 100}}));
  f.push_back(three_way("deep stack best", {{1, {"Ks", "Kh"}}, {2, {"Qs", "Qh"}}, {3, {"As", "Ah"}}},
                        {{3, 250}}));
  f.push_back(three_way("middle stack best", {{1, {"Ks", "Kh"}}, {2, {"As", "Ah"}}, {3, {"Qs", "Qh"}}},
                        {{2, 250}}));
  f.push_back(three_way("short best, deep second", {{1, {"As", "Ah"}}, {2, {"Qs", "Qh"}}, {3, {"Ks", "Kh"}}},
                        {{1, 150}, {3, 100}}));

  {
    SidePotFixture x = three_way("split main pot", {{1, {"Ac", "Kd"}}, {2, {"Ah", "Kc"}}, {3, {"Qs", "Jh"}}},
                                 {{1, 75}, {2, 175}});
    x.board = board_b;
    f.push_back(x);
  }
  {
    SidePotFixture x;
    x.name = "odd chip left of dealer";
    x.stacks = {25, 25, 25};
    x.holes = {{1, {"Ac", "Kd"}}, {2, {"Ah", "Kc"}}, {3, {"Qs", "Jh"}}};
    x.board = board_b;
    x.actions = {{1, K::AllIn, 0}, {2, K::Call, 0}, {3, K::Call, 0}};
    x.payouts = {{1, 37}, {2, 38}};
    x.deltas = {{1, 12}, {2, 13}, {3, -25}};
    f.push_back(x);
  }
  auto four_way = [&](std::string name, std::map<int, std::pair<std::string, std::string>> holes,
                      std::map<int, std::int64_t> deltas) {
    SidePotFixture x;
    x.name = std::move(name);
    x.stacks = {20, 40, 60, 100};
    x.holes = std::move(holes);
    x.board = board_b;
    x.actions = {{4, K::AllIn, 0}, {1, K::AllIn, 0}, {2, K::AllIn, 0}, {3, K::AllIn, 0}};
    const std::map<int, std::int64_t> invested = {{1, 20}, {2, 40}, {3, 60}, {4, 60}};
    for (auto [seat, d] : deltas)
      if (d + invested.at(seat) != 0) x.payouts[seat] = d + invested.at(seat);
    x.deltas = std::move(deltas);
    return x;
  };
  f.push_back(four_way("four layers, shortest best",
                       {{1, {"As", "Ah"}}, {2, {"Ks", "Kh"}}, {3, {"Qs", "Qh"}}, {4, {"Js", "Jh"}}},
                       {{1, 60}, {2, 20}, {3, -20}, {4, -60}}));
  f.push_back(four_way("four layers, deepest best",
                       {{1, {"Js", "Jh"}}, {2, {"Qs", "Qh"}}, {3, {"Ks", "Kh"}}, {4, {"As", "Ah"}}},
                       {{1, -20}, {2, -40}, {3, -60}, {4, 120}}));
  {
    SidePotFixture x;
    x.name = "folded chips stay in the pot";
    x.stacks = {100, 30, 100, 100};
    x.holes = {{1, {"Ts", "Th"}}, {2, {"As", "Ah"}}, {3, {"5c", "6d"}}, {4, {"Ks", "Kh"}}};
    x.board = board_b;
    x.actions = {{4, K::Raise, 10}, {1, K::Call, 0}, {2, K::AllIn, 0},
                 {3, K::Fold, 0},   {4, K::Call, 0}, {1, K::Fold, 0}};
    x.payouts = {{2, 72}};
    x.deltas = {{1, -10}, {2, 42}, {3, -2}, {4, -30}};
    f.push_back(x);
  }
  {
    SidePotFixture x;
    x.name = "side pot built after the flop";
    x.stacks = {15, 50, 50, 50};
    x.holes = {{1, {"Qs", "Jh"}}, {2, {"Ac", "Kd"}}, {3, {"Ah", "Kc"}}, {4, {"8s", "8h"}}};
    x.board = board_b;
    x.actions = {{4, K::Raise, 6}, {1, K::AllIn, 0}, {2, K::Call, 0}, {3, K::Call, 0}, {4, K::Fold, 0},
                 {2, K::Bet, 10},  {3, K::Call, 0},  {2, K::Check, 0}, {3, K::Check, 0}, {2, K::Check, 0},
                 {3, K::Check, 0}};
    x.payouts = {{2, 36}, {3, 35}};
    x.deltas = {{1, -15}, {2, 11}, {3, 10}, {4, -6}};
    f.push_back(x);
  }
  return f;
}

struct FixtureOutcome {
  std::map<int, std::int64_t> payouts;
  std::map<int, std::int64_t> deltas;
  bool conserved_throughout = true;
  bool terminal = false;
};

inline FixtureOutcome play_fixture(const SidePotFixture& x) {
  poker::TableConfig config;
  for (std::size_t i = 0; i < x.stacks.size(); ++i)
    config.seats.push_back({static_cast<int>(i + 1), "S" + std::to_string(i + 1), poker::Money::from_minor(x.stacks[i])});
  config.blinds = {poker::Money::from_minor(1), poker::Money::from_minor(2)};
  config.dealer_seat = 1;
  poker::DealSpec deal;
  for (const auto& [seat, cards] : x.holes)
    deal.holes[seat] = {poker::parse_card(cards.first), poker::parse_card(cards.second)};
  for (const auto& c : x.board) deal.board.push_back(poker::parse_card(c));

  poker::GameState s = poker::GameState::new_hand(config, deal);
  FixtureOutcome out;
  for (const auto& [seat, kind, to] : x.actions) {
    if (!s.to_act() || s.player(*s.to_act()).seat_no != seat)
      throw std::runtime_error(x.name + ": seat " + std::to_string(seat) + " is not to act");
    s.apply({kind, poker::Money::from_minor(to)});
    out.conserved_throughout = out.conserved_throughout && s.chips_conserved();
  }
  out.terminal = s.is_terminal();
  if (!out.terminal) return out;
  for (auto [seat, m] : s.resolve_showdown())
    if (!m.is_zero()) out.payouts[seat] = m.minor();
  for (auto [seat, m] : s.final_deltas()) out.deltas[seat] = m.minor();
  return out;
}

}  // namespace oracle
