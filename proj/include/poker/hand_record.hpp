#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "poker/cards.hpp"
#include "poker/money.hpp"

namespace poker {

enum class Street : std::uint8_t { Preflop = 0, Flop = 1, Turn = 2, River = 3, Showdown = 4 };

std::string_view street_name(Street s);  // "PREFLOP", "FLOP", ...
std::optional<Street> street_from_name(std::string_view name);

enum class ActionKind : std::uint8_t { PostBlind, Fold, Check, Call, Bet, Raise, AllIn, Show };

std::string_view action_kind_name(ActionKind k);  // "post_blind", "fold", ..., "all_in", "show"
std::optional<ActionKind> action_kind_from_name(std::string_view name);

// The five decision classes used for labels and metrics.
enum class ActionClass : std::uint8_t { Check = 0, Call = 1, Fold = 2, Bet = 3, Raise = 4 };
inline constexpr int kNumActionClasses = 5;

std::string_view action_class_name(ActionClass c);  // "check", "call", ...
std::optional<ActionClass> action_class_from_name(std::string_view name);

struct BlindStructure {
  Money small_blind;
  Money big_blind;
  std::string currency = "USD";

  friend bool operator==(const BlindStructure&, const BlindStructure&) = default;
};

struct SeatEntry {
  int seat_no = 0;
  std::string player_name;
  Money starting_stack;

  friend bool operator==(const SeatEntry&, const SeatEntry&) = default;
};

// amount is the chips this event moved except for raises, where it is the
// increment over the bet faced ("raises 0.05 to 0.1": amount 0.05, raise_to 0.1).
// For all_in it is the actor's entire remaining stack.
struct ActionEvent {
  Street street = Street::Preflop;
  std::string actor;
  ActionKind kind = ActionKind::Fold;
  Money amount;
  std::optional<Money> raise_to;

  friend bool operator==(const ActionEvent&, const ActionEvent&) = default;
};

struct BoardCard {
  Card card;
  Street street = Street::Flop;

  friend bool operator==(const BoardCard&, const BoardCard&) = default;
};

struct UncalledReturn {
  std::string player;
  Money amount;
  Street street = Street::Preflop;

  friend bool operator==(const UncalledReturn&, const UncalledReturn&) = default;
};

struct Collection {
  std::string player;
  Money amount;
  std::string pot = "pot";  // "pot", "main pot", "side pot", "side pot-1", ...

  friend bool operator==(const Collection&, const Collection&) = default;
};

using HoleCards = std::array<Card, 2>;

struct HandRecord {
  std::string hand_id;
  std::string table_name;
  int max_seats = 0;
  std::string timestamp;
  BlindStructure blinds;
  int dealer_seat = 0;
  std::vector<SeatEntry> seats;
  std::map<std::string, HoleCards> hole_cards;  // revealed players only
  std::vector<BoardCard> board;
  std::vector<ActionEvent> actions;
  std::vector<UncalledReturn> uncalled;
  std::vector<Collection> collections;
  std::vector<std::string> mucked;  // reached showdown without revealing
  Money pot_total;
  Money rake;
  std::map<std::string, Money> results;  // net delta per seated player
  std::map<std::string, HandCategory> shown_ranks;

  friend bool operator==(const HandRecord&, const HandRecord&) = default;

  const SeatEntry* seat_of(std::string_view player) const;
  const SeatEntry* seat_by_number(int seat_no) const;
  std::vector<Card> board_cards() const;
  // Last street on which anything happened; Showdown when cards were shown.
  Street final_street() const;
  // Sum of chips put in by the player, net of uncalled returns.
  Money invested(std::string_view player) const;
};

}  // namespace poker
