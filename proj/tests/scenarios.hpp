// The six-handed hand used by the prompt and service tests: dealer seat 9,
// hero in the small blind at seat 2 holding Th Ah.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "poker/amount_grid.hpp"
#include "poker/cards.hpp"
#include "poker/game_engine.hpp"
#include "poker/prompt_builder.hpp"

namespace scenario {

using poker::Money;

inline Money cents(std::int64_t c) { return Money::from_minor(c); }

inline poker::TableConfig table() {
  poker::TableConfig t;
  t.seats = {{2, "Seat 2", cents(392)}, {3, "Seat 3", cents(233)}, {5, "Seat 5", cents(554)},
             {6, "Seat 6", cents(375)}, {7, "Seat 7", cents(422)}, {9, "Seat 9", cents(147)}};
  t.blinds = {cents(2), cents(5)};
  t.dealer_seat = 9;
  return t;
}

inline poker::HoleCards hero_cards() { return {poker::parse_card("Th"), poker::parse_card("Ah")}; }

// The state before the hero's first decision, assembled field by field.
inline poker::DecisionPoint first_decision() {
  poker::DecisionPoint dp;
  dp.street = poker::Street::Preflop;
  dp.hero = "Seat 2";
  dp.hero_seat = 2;
  dp.hole = hero_cards();
  dp.characteristics = poker::hole_characteristics(dp.hole[0], dp.hole[1]);
  dp.rank = poker::HandCategory::HighCard;
  dp.player_amount = 6;
  dp.blinds = {cents(2), cents(5)};
  dp.order = {2, 3, 5, 6, 7, 9};
  dp.small_blind_seat = 2;
  dp.stacks = {{2, cents(392)}, {3, cents(233)}, {5, cents(554)}, {6, cents(375)}, {7, cents(422)}, {9, cents(147)}};
  for (int seat : dp.order) {
    dp.action_history[seat] = {};
    dp.discard_flags[seat] = false;
  }
  dp.action_history[9] = {"raises 0.05 to 0.1"};
  dp.pot = cents(17);
  dp.legal_actions = {poker::ActionKind::Fold, poker::ActionKind::Raise, poker::ActionKind::Call};
  dp.amount_menu = poker::amount_menu(cents(5), cents(392));
  return dp;
}

// Service session config for the hand.
inline nlohmann::json session_config(const std::string& advisor) {
  nlohmann::json players = nlohmann::json::array();
  for (const auto& s : table().seats) players.push_back({{"seat", s.seat_no}, {"stack", poker::to_double(s.stack)}});
  return {{"players", players},
          {"blinds", {{"small", 0.02}, {"big", 0.05}, {"currency", "USD"}}},
          {"dealer_seat", 9},
          {"hero_seat", 2},
          {"hero_cards", {"Th", "Ah"}},
          {"hand_id", "advice_demo"},
          {"advisor", advisor}};
}

// One scripted step: the event posted to the service and the same step
// applied directly to an engine.
struct Step {
  nlohmann::json event;
  int seat = 0;
  poker::PolicyDecision decision;
  std::vector<std::string> board;
};

inline Step act(int seat, poker::ActionKind k, std::int64_t to = 0, const std::string& text = {}) {
  Step s;
  s.seat = seat;
  s.decision = {k, cents(to)};
  if (!text.empty()) {
    s.event = {{"type", "action"}, {"seat", seat}, {"text", text}};
  } else {
    s.event = {{"type", "action"}, {"seat", seat}, {"action", std::string(poker::action_kind_name(k))}};
    if (k == poker::ActionKind::Bet || k == poker::ActionKind::Raise) s.event["amount"] = poker::to_double(cents(to));
  }
  return s;
}

inline Step deal(std::vector<std::string> cards) {
  Step s;
  s.board = cards;
  s.event = {{"type", "board"}, {"cards", cards}};
  return s;
}

inline std::vector<Step> preflop() {
  using K = poker::ActionKind;
  return {act(5, K::Fold), act(6, K::Fold), act(7, K::Fold), act(9, K::Raise, 10, "raises 0.05 to 0.1")};
}

inline std::vector<Step> to_flop_bet() {
  using K = poker::ActionKind;
  return {act(2, K::Call), act(3, K::Call), deal({"7h", "4h", "2h"}), act(2, K::Check), act(3, K::Check),
          act(9, K::Bet, 22, "bets 0.22")};
}

inline std::vector<Step> to_end() {
  using K = poker::ActionKind;
  return {act(2, K::Call), act(3, K::Fold), deal({"Ks"}), act(2, K::Bet, 90), act(9, K::Fold)};
}

inline poker::GameState engine_after(const std::vector<Step>& steps) {
  poker::DealSpec spec;
  spec.holes[2] = hero_cards();
  poker::GameState s = poker::GameState::new_hand(table(), spec);
  for (const auto& st : steps) {
    if (!st.board.empty()) {
      std::vector<poker::Card> cards;
      for (const auto& c : st.board) cards.push_back(poker::parse_card(c));
      s.deal_board(cards);
    } else {
      s.apply(st.decision);
    }
  }
  return s;
}

}  // namespace scenario
