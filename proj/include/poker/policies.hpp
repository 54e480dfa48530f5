#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "poker/cards.hpp"
#include "poker/game_engine.hpp"
#include "poker/rng.hpp"

namespace poker {

// Fraction of sampled completions the hero wins, ties credited 1/k. The
// unknown cards are drawn from `deck` (the full deck when empty) minus the
// known cards.
double mc_equity(const HoleCards& hole, std::span<const Card> board, int n_opponents, int samples, std::uint64_t seed,
                 std::span<const Card> deck = {});

struct EquityParams {
  int samples = 1000;
  std::optional<double> call_threshold;   // default 0.3 + 0.05 * (opponents - 1)
  std::optional<double> raise_threshold;  // default 0.6
  std::uint64_t rng_seed = 0;

  double call_for(int n_opponents) const;
  double raise_for(int n_opponents) const;
};

// Mapping from equity to a decision for the player to act.
PolicyDecision equity_decision(const GameState& state, double equity, double call_threshold, double raise_threshold);

class UnparseableResponse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Response grammar: optional preamble, an action verb, optional "to <x>" or "<x>".
PolicyDecision parse_action_text(std::string_view text);
// "You should <action>[ to <amount>]."
std::string format_response(const PolicyDecision& d);

// Check when free, otherwise fold.
PolicyDecision fallback_decision(const GameState& state);

// Makes a decision legal: unknown kinds fall back, amounts snap up to the menu
// and are clamped into [min_to, max_to].
PolicyDecision conform_decision(const GameState& state, PolicyDecision d);

struct Incident {
  std::string policy;
  std::string message;
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  // Called for the player to act in `state`.
  virtual PolicyDecision decide(const GameState& state) = 0;
  // Number of fallbacks taken since construction.
  virtual int fallbacks() const { return 0; }
};

class EquityPolicy : public Policy {
 public:
  explicit EquityPolicy(EquityParams params) : params_(params), rng_(params.rng_seed) {}
  std::string name() const override { return "equity"; }
  PolicyDecision decide(const GameState& state) override;
  double last_equity() const { return last_equity_; }

 private:
  EquityParams params_;
  Rng rng_;
  double last_equity_ = 0;
};

class RandomPolicy : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random"; }
  PolicyDecision decide(const GameState& state) override;

 private:
  Rng rng_;
};

// Always the same kind when legal: check/call by default.
class ScriptedPolicy : public Policy {
 public:
  enum class Mode { CheckCall, CheckFold, Raise };
  explicit ScriptedPolicy(Mode mode = Mode::CheckCall) : mode_(mode) {}
  std::string name() const override;
  PolicyDecision decide(const GameState& state) override;

 private:
  Mode mode_;
};

struct RemoteConfig {
  std::string endpoint;  // http://host:port/path
  std::chrono::milliseconds timeout{10000};
  int retries = 0;
  std::string session_id;
};

struct RemoteReply {
  std::optional<std::string> text;  // absent on failure
  std::string error;
};

// POST {prompt, session_id} -> {text}.
RemoteReply remote_complete(const RemoteConfig& config, const std::string& prompt);

// Prompt rendered from the acting seat's point of view.
class RemotePolicy : public Policy {
 public:
  explicit RemotePolicy(RemoteConfig config) : config_(std::move(config)) {}
  std::string name() const override { return "remote"; }
  PolicyDecision decide(const GameState& state) override;
  int fallbacks() const override { return fallbacks_; }
  const std::vector<Incident>& incidents() const { return incidents_; }

  // Shared decision path: query, parse, snap, or fall back.
  struct Outcome {
    PolicyDecision decision;
    bool fallback = false;
    std::string raw_text;
    std::string error;
  };
  static Outcome query(const RemoteConfig& config, const GameState& state, const std::string& prompt);

 private:
  RemoteConfig config_;
  int fallbacks_ = 0;
  std::vector<Incident> incidents_;
};

// "equity", "equity:500", "random", "call", "fold", "raise", "remote:http://...".
struct PolicySpec {
  std::string kind;
  int samples = 1000;
  std::string endpoint;

  static PolicySpec parse(std::string_view text);
  std::string to_string() const;
};

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::uint64_t seed,
                                    std::chrono::milliseconds remote_timeout = std::chrono::milliseconds(10000));

}  // namespace poker
