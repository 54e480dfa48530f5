#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "poker/hand_record.hpp"
#include "poker/rational.hpp"

namespace poker {

using ConfusionMatrix = std::array<std::array<std::int64_t, kNumActionClasses>, kNumActionClasses>;

// Mean per-class F1 over all five classes; a class with no true and no
// predicted samples scores 0.
double macro_f1(std::span<const ActionClass> pred, std::span<const ActionClass> truth);
std::array<double, kNumActionClasses> per_class_f1(std::span<const ActionClass> pred, std::span<const ActionClass> truth);

// Row = truth, column = prediction.
ConfusionMatrix confusion_matrix(std::span<const ActionClass> pred, std::span<const ActionClass> truth);

// Mean squared difference in big blinds.
Rational amount_mse_bb(std::span<const Money> pred, std::span<const Money> truth, Money big_blind);

struct ValueMse {
  std::optional<Rational> mse;  // absent when no pair qualifies
  std::size_t pairs = 0;
};

// Amount error over samples where prediction and truth are the same bet or
// raise class.
ValueMse value_amount_mse_bb(std::span<const ActionClass> pred, std::span<const Money> pred_amounts,
                             std::span<const ActionClass> truth, std::span<const Money> truth_amounts,
                             Money big_blind);

// (prod p)^(-1/N), evaluated in log space.
double perplexity(std::span<const double> token_probs);

// One game as seen from the evaluated player.
struct GameTranscript {
  std::vector<ActionClass> actions;  // the player's decisions in order
  int streets_reached = 1;           // betting streets, 1..4
  Money invested;                    // blinds included
  Money big_blind;
};

// Per game count(a) / streets, capped at 1, then averaged over games.
std::map<ActionClass, double> action_scores(std::span<const GameTranscript> games);
Rational average_investment(std::span<const GameTranscript> games);

struct MbbResult {
  Rational mean;
  double stddev = 0;
};
MbbResult mbb_per_hand(std::span<const Rational> deltas_bb);

// Transcript of one player's part in a recorded hand.
GameTranscript transcript_for(const HandRecord& record, std::string_view player);

}  // namespace poker
