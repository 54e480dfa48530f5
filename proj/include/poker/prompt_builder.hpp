#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "poker/cards.hpp"
#include "poker/game_engine.hpp"
#include "poker/hand_history.hpp"
#include "poker/hand_record.hpp"
#include "poker/money.hpp"

namespace poker {

using VisibleCards = std::array<std::optional<Card>, 2>;

// Everything one prompt shows, plus the ground-truth label when extracted
// from a log.
struct DecisionPoint {
  std::string hand_id;
  Street street = Street::Preflop;
  std::string hero;
  int hero_seat = 0;
  HoleCards hole{};
  HoleCharacteristics characteristics;
  HandCategory rank = HandCategory::HighCard;
  std::array<std::optional<Card>, 5> board_visible{};

  int player_amount = 0;
  BlindStructure blinds;
  std::vector<int> order;  // seat numbers, ascending
  int small_blind_seat = 0;

  std::map<int, Money> stacks;  // money shown per seat
  std::map<int, std::vector<std::string>> action_history;
  std::map<int, bool> discard_flags;
  std::map<int, VisibleCards> shown_cards;  // opponents' displayed cards
  Money pot;

  std::vector<ActionKind> legal_actions;
  std::vector<Money> amount_menu;
  bool terminal = false;
  std::optional<int> waiting_on;            // seat to act when it is not the hero
  std::vector<std::pair<int, Money>> winners;  // terminal payouts when known
  std::optional<HandCategory> winning_rank;

  std::optional<ActionEvent> label_event;  // action as logged
  std::optional<PolicyDecision> label;     // with the amount snapped to the menu
  std::optional<ActionClass> label_class;
};

class PromptTemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Named sections with {placeholder} substitution.
class PromptTemplate {
 public:
  static PromptTemplate parse(std::string_view text);
  static PromptTemplate from_file(const std::filesystem::path& path);
  // The built-in prompt.v1 asset.
  static const PromptTemplate& standard();

  const std::string& version() const { return version_; }
  bool has_section(std::string_view name) const;
  std::string render(std::string_view section, const std::map<std::string, std::string>& values) const;

 private:
  std::string version_;
  std::map<std::string, std::string, std::less<>> sections_;
};

std::string_view prompt_asset_text();

// Action text as it appears in the per-seat action lists.
std::string action_text(const ActionEvent& ev);

std::string build_constant_block(const DecisionPoint& dp, const PromptTemplate& t = PromptTemplate::standard());
std::string build_dynamic_block(const DecisionPoint& dp, const PromptTemplate& t = PromptTemplate::standard());
// Constant block followed by the dynamic block; a non-empty directive is
// appended verbatim on its own line.
std::string build_prompt(const DecisionPoint& dp, std::string_view directive = {},
                         const PromptTemplate& t = PromptTemplate::standard());

// Snapshot from the hero's point of view. Only the hero's hole cards and
// the entries of `shown` are visible.
DecisionPoint decision_point_from_state(const GameState& state, int hero_seat, const std::string& hand_id = {},
                                        const std::map<int, VisibleCards>& shown = {});

// Effective class of a logged event in the given pre-action state.
ActionClass action_class_of(const ActionEvent& ev, const GameState& before);

struct ExtractResult {
  std::vector<DecisionPoint> points;
  std::vector<Diagnostic> diagnostics;
};

// One decision point per hero betting action; requires the hero's cards.
ExtractResult extract_decision_points(const HandRecord& record, const std::string& hero);

}  // namespace poker
