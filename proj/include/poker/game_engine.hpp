#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "poker/cards.hpp"
#include "poker/hand_record.hpp"
#include "poker/money.hpp"

namespace poker {

inline constexpr int kMinPlayers = 2;
inline constexpr int kMaxPlayers = 15;

struct SeatConfig {
  int seat_no = 0;
  std::string name;
  Money stack;
};

struct TableConfig {
  std::vector<SeatConfig> seats;
  BlindStructure blinds;
  int dealer_seat = 0;
  std::uint64_t rng_seed = 0;

  // Throws std::invalid_argument naming the broken constraint.
  void validate() const;
};

// Cards fixed in advance. Board cards are consumed as streets open; once they
// run out the state waits in awaiting_board() for deal_board().
struct DealSpec {
  std::map<int, HoleCards> holes;  // by seat number; absent = unknown
  std::vector<Card> board;
};

struct Pot {
  Money amount;
  std::vector<int> eligible_seats;

  friend bool operator==(const Pot&, const Pot&) = default;
};

// kind plus, for bet/raise, the street total the actor raises to.
struct PolicyDecision {
  ActionKind kind = ActionKind::Fold;
  Money amount;

  friend bool operator==(const PolicyDecision&, const PolicyDecision&) = default;
};

std::string to_string(const PolicyDecision& d);

struct LegalActionSet {
  std::vector<ActionKind> kinds;  // fold, check, bet, raise, call, all_in order
  Money call_amount;
  Money min_to;  // smallest legal bet/raise target
  Money max_to;  // all-in target
  std::vector<Money> menu;

  // all_in is listed only when it is the sole way to put more chips in, but
  // it is accepted whenever bet or raise is (as the max_to target).
  bool contains(ActionKind k) const;
};

class IllegalAction : public std::runtime_error {
 public:
  explicit IllegalAction(const std::string& rule) : std::runtime_error("illegal action: " + rule), rule_(rule) {}
  const std::string& rule() const { return rule_; }

 private:
  std::string rule_;
};

struct PlayerState {
  int seat_no = 0;
  std::string name;
  Money starting_stack;
  Money stack;
  Money street_contrib;
  Money total_contrib;
  bool folded = false;
  bool all_in = false;
  bool acted = false;
  std::optional<Money> acted_level;  // full-raise level when last acting this street
  std::optional<HoleCards> hole;
};

class GameState {
 public:
  // Shuffles a fresh deck from config.rng_seed and deals every player.
  static GameState new_hand(const TableConfig& config);
  // Uses the supplied cards; unknown holes stay unknown.
  static GameState new_hand(const TableConfig& config, DealSpec deal);

  const TableConfig& config() const { return config_; }
  Street street() const { return street_; }
  bool is_terminal() const { return terminal_; }
  bool awaiting_board() const { return awaiting_board_; }
  std::optional<int> to_act() const { return to_act_; }
  int num_players() const { return static_cast<int>(players_.size()); }
  const PlayerState& player(int index) const { return players_.at(index); }
  const std::vector<PlayerState>& players() const { return players_; }
  int index_of_seat(int seat_no) const;
  int dealer_index() const { return dealer_; }
  int small_blind_index() const { return sb_; }
  int big_blind_index() const { return bb_; }
  const std::vector<Card>& board() const { return board_; }
  const std::vector<Pot>& pots() const { return pots_; }
  // Settled pots plus chips bet on the current street.
  Money pot_total() const;
  Money current_bet() const { return current_bet_; }
  Money min_raise() const { return min_raise_; }
  std::optional<int> last_aggressor() const { return last_aggressor_; }
  const std::vector<ActionEvent>& history() const { return history_; }
  const std::vector<UncalledReturn>& uncalled() const { return uncalled_; }
  std::size_t cards_needed() const;  // cards deal_board() expects, 0 if none

  LegalActionSet legal_actions() const;
  bool can_raise(int index) const;

  GameState apply_action(const PolicyDecision& decision) const;
  // In place. Validation happens before any mutation.
  void apply(const PolicyDecision& decision);
  void deal_board(std::span<const Card> cards);
  void reveal_hole(int seat_no, HoleCards cards);

  // Showdown needs every contender's cards and a full board.
  bool outcome_known() const;
  // Payout per seat number; requires a terminal state with a known outcome.
  std::map<int, Money> resolve_showdown() const;
  // Payout minus total contribution per seat number.
  std::map<int, Money> final_deltas() const;

  Money chips_in_play() const;
  Money starting_chips() const;
  bool chips_conserved() const { return chips_in_play() == starting_chips(); }

  // Transcript of a terminal hand. rake is taken from the main-pot winnings.
  HandRecord to_record(const std::string& hand_id, Money rake = Money{}) const;

 private:
  GameState() = default;
  void post_blinds();
  void advance(int actor);
  void close_street();
  void return_uncalled();
  void start_street();
  void rebuild_pots();
  void finish();
  bool needs_action(int i) const;
  int next_index(int from) const { return (from + 1) % num_players(); }
  int live_count() const;
  void deal_from_deck(std::size_t n);

  TableConfig config_;
  std::vector<PlayerState> players_;
  int dealer_ = 0;
  int sb_ = 0;
  int bb_ = 0;
  Street street_ = Street::Preflop;
  std::vector<Card> board_;
  std::vector<Card> deck_;  // next board cards, front first
  std::vector<Pot> pots_;
  Money current_bet_;
  Money min_raise_;
  Money full_raise_level_;
  std::optional<int> last_aggressor_;
  std::optional<int> to_act_;
  bool terminal_ = false;
  bool awaiting_board_ = false;
  std::vector<ActionEvent> history_;
  std::vector<UncalledReturn> uncalled_;
  std::vector<std::pair<Card, Street>> board_streets_;
};

// Rebuilds the engine state by replaying a parsed hand's events. Throws
// IllegalAction or std::runtime_error on inconsistent logs.
GameState replay_record(const HandRecord& record);

// Replays events strictly before history position `stop`.
GameState replay_prefix(const HandRecord& record, std::size_t stop);

TableConfig table_config_from_record(const HandRecord& record);

}  // namespace poker
