#include "poker/hand_record.hpp"

#include <algorithm>
#include <array>

namespace poker {

namespace {

constexpr std::array<std::string_view, 5> kStreetNames = {"PREFLOP", "FLOP", "TURN", "RIVER", "SHOWDOWN"};
constexpr std::array<std::string_view, 8> kActionNames = {"post_blind", "fold",   "check",  "call",
                                                          "bet",        "raise",  "all_in", "show"};

}  // namespace

std::string_view street_name(Street s) { return kStreetNames.at(static_cast<std::size_t>(s)); }

std::optional<Street> street_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kStreetNames.size(); ++i)
    if (kStreetNames[i] == name) return static_cast<Street>(i);
  return std::nullopt;
}

std::string_view action_kind_name(ActionKind k) { return kActionNames.at(static_cast<std::size_t>(k)); }

std::optional<ActionKind> action_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kActionNames.size(); ++i)
    if (kActionNames[i] == name) return static_cast<ActionKind>(i);
  return std::nullopt;
}

const SeatEntry* HandRecord::seat_of(std::string_view player) const {
  for (const auto& s : seats)
    if (s.player_name == player) return &s;
  return nullptr;
}

const SeatEntry* HandRecord::seat_by_number(int seat_no) const {
  for (const auto& s : seats)
    if (s.seat_no == seat_no) return &s;
  return nullptr;
}

std::vector<Card> HandRecord::board_cards() const {
  std::vector<Card> out;
  out.reserve(board.size());
  for (const auto& b : board) out.push_back(b.card);
  return out;
}

Street HandRecord::final_street() const {
  Street last = Street::Preflop;
  for (const auto& a : actions) last = std::max(last, a.street);
  for (const auto& b : board) last = std::max(last, b.street);
  if (!mucked.empty()) last = Street::Showdown;
  return last;
}

Money HandRecord::invested(std::string_view player) const {
  Money total;
  Money street_contrib;
  Street current = Street::Preflop;
  for (const auto& a : actions) {
    if (a.street != current) {
      current = a.street;
      street_contrib = Money{};
    }
    if (a.actor != player) continue;
    switch (a.kind) {
      case ActionKind::PostBlind:
      case ActionKind::Call:
      case ActionKind::Bet:
      case ActionKind::AllIn:
        total += a.amount;
        street_contrib += a.amount;
        break;
      case ActionKind::Raise: {
        Money added = *a.raise_to - street_contrib;
        total += added;
        street_contrib = *a.raise_to;
        break;
      }
      default:
        break;
    }
  }
  for (const auto& u : uncalled)
    if (u.player == player) total -= u.amount;
  return total;
}

std::string_view action_class_name(ActionClass c) {
  switch (c) {
    case ActionClass::Check: return "check";
    case ActionClass::Call: return "call";
    case ActionClass::Fold: return "fold";
    case ActionClass::Bet: return "bet";
    case ActionClass::Raise: return "raise";
  }
  return "?";
}

std::optional<ActionClass> action_class_from_name(std::string_view name) {
  for (int i = 0; i < kNumActionClasses; ++i) {
    auto c = static_cast<ActionClass>(i);
    if (action_class_name(c) == name) return c;
  }
  return std::nullopt;
}

}  // namespace poker
