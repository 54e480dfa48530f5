#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "poker/hand_history.hpp"
#include "poker/player_analytics.hpp"
#include "poker/prompt_builder.hpp"

namespace poker {

inline constexpr double kTrainRatio = 0.9;
inline constexpr std::int64_t kRewardScale = 1500;  // mbb/h mapped to score 1

class EmptyDatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DatasetRecord {
  std::string prompt;
  std::string response;
  PolicyDecision label;
  ActionClass label_class = ActionClass::Fold;
  Money label_amount;  // street total for bet/raise/all-in, else 0
  std::string hand_id;
  std::string hero;
  Street street = Street::Preflop;
  std::string band;
  std::optional<Rational> score;  // reward records only
  std::string split;              // reward records: "train" or "test"
};

nlohmann::json record_to_json(const DatasetRecord& r);

// clamp(win_rate / 1500, -1, 1).
Rational reward_score(const Rational& win_rate_mbb_h);

// Hand ids assigned to the training side: ceil(ratio * n) of them, chosen by
// a seeded shuffle.
std::set<std::string> split_hands(const std::vector<std::string>& hand_ids, std::uint64_t seed,
                                  double ratio = kTrainRatio);

struct SftSplit {
  std::vector<DatasetRecord> train;
  std::vector<DatasetRecord> test;
  std::vector<Diagnostic> diagnostics;
};

// Structured prompts for the heroes of band-filtered showdown hands.
SftSplit emit_sft(std::span<const ParsedHand> corpus, const WinRateBand& band, std::uint64_t seed,
                  int min_hands = kDefaultMinHands);

// Verbatim hand text as the prompt, for every revealed player of every
// showdown-revealed hand.
std::vector<DatasetRecord> emit_raw_variant(std::span<const ParsedHand> corpus);

// Every revealed hero with enough hands, scored by win rate.
std::vector<DatasetRecord> emit_reward(std::span<const ParsedHand> corpus,
                                       const std::map<std::string, PlayerStats>& stats, std::uint64_t seed,
                                       int min_hands = kDefaultMinHands);

struct DatasetOptions {
  std::string variant = "II";  // I raw, II filtered, III..VI banded, custom
  std::optional<WinRateBand> band;  // custom band
  int min_hands = kDefaultMinHands;
  std::uint64_t seed = 0;
};

struct Dataset {
  std::vector<DatasetRecord> train;
  std::vector<DatasetRecord> test;
  std::vector<DatasetRecord> reward;
  nlohmann::json manifest;
  std::vector<Diagnostic> diagnostics;
};

Dataset build_dataset(std::span<const ParsedHand> corpus, const DatasetOptions& options);

// sft_train.jsonl, sft_test.jsonl, reward.jsonl, manifest.json.
void write_dataset(const std::filesystem::path& dir, const Dataset& dataset);

}  // namespace poker
