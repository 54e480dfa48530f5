#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "poker/eval_metrics.hpp"
#include "poker/game_engine.hpp"
#include "poker/policies.hpp"

namespace poker {

struct MatchSpec {
  std::vector<PolicySpec> seat_policies;  // one per seat, in seat order
  int hands = 1000;
  BlindStructure blinds{Money::from_minor(1), Money::from_minor(2)};
  Money starting_stack = Money::from_minor(200);
  std::uint64_t base_seed = 0;
  bool rotation = true;
  int jobs = 1;
  double error_budget = 0.01;  // fraction of hands allowed to need a fallback
  std::chrono::milliseconds remote_timeout{10000};
  bool keep_records = false;

  // Throws std::invalid_argument naming the broken constraint.
  void validate() const;
};

// Policy index seated at each seat position for the given hand. With
// rotation the assignment shifts by one seat per hand; without it seat s
// always holds policy s.
std::vector<int> seat_rotation(const MatchSpec& spec, int hand_index);

// Deck seed of one hand.
inline std::uint64_t hand_seed(std::uint64_t base_seed, int hand_index) {
  return base_seed ^ static_cast<std::uint64_t>(hand_index);
}

struct MatchStats {
  std::string label;  // "P<k>" plus the policy spec
  PolicySpec spec;
  int hands = 0;
  std::vector<Rational> deltas_bb;  // per hand, in hand order
  Rational net_bb;
  Rational mbb_h;
  double stddev = 0;  // standard error of mbb_h
  std::map<ActionClass, double> action_scores;
  Rational avg_investment_bb;
  int decisions = 0;
  int fallbacks = 0;
  double decision_seconds = 0;  // wall clock, excluded from determinism

  double mean_response_s() const { return decisions ? decision_seconds / decisions : 0.0; }
};

struct MatchResult {
  std::vector<MatchStats> policies;  // by policy index
  int hands_played = 0;
  bool aborted = false;  // error budget exhausted; stats cover completed hands only
  std::vector<Incident> incidents;
  std::vector<HandRecord> records;  // when keep_records
};

MatchResult run_match(const MatchSpec& spec);

// Report without wall-clock fields unless include_timing.
nlohmann::json match_report(const MatchSpec& spec, const MatchResult& result, bool include_timing = true);

// Hand-history text of every kept record.
std::string transcript_text(const MatchResult& result);

struct ResponseTime {
  double mean_s = 0;
  double stddev_s = 0;
  int samples = 0;
};

// Wall time of policy.decide over states that have a player to act.
ResponseTime measure_response_time(Policy& policy, std::span<const GameState> states);

// Decision states drawn from self-play of `players` random policies.
std::vector<GameState> sample_states(int players, int count, std::uint64_t seed);

struct SweepRow {
  int players = 0;
  MatchStats hero;
  Rational field_mbb_h;  // mean over the field policies
};

// Hero policy against a field of identical policies at each player count.
std::vector<SweepRow> player_sweep(const PolicySpec& hero, const PolicySpec& field, int min_players, int max_players,
                                   int hands, std::uint64_t seed, int jobs = 1);

}  // namespace poker
