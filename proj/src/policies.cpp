#include "poker/policies.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include <httplib.h>
#include <json.hpp>

#include "poker/amount_grid.hpp"
#include "poker/prompt_builder.hpp"

namespace poker {

double mc_equity(const HoleCards& hole, std::span<const Card> board, int n_opponents, int samples, std::uint64_t seed,
                 std::span<const Card> deck) {
  if (n_opponents < 1) throw std::invalid_argument("need at least one opponent");
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  if (board.size() > 5 || board.size() == 1 || board.size() == 2)
    throw std::invalid_argument("board must hold 0, 3, 4 or 5 cards");
  CardSet known;
  for (Card c : hole)
    if (!known.insert(c)) throw std::invalid_argument("duplicate card " + format_card(c));
  for (Card c : board)
    if (!known.insert(c)) throw std::invalid_argument("duplicate card " + format_card(c));

  std::vector<Card> source = deck.empty() ? full_deck() : std::vector<Card>(deck.begin(), deck.end());
  std::vector<Card> rest;
  for (Card c : source)
    if (!known.contains(c)) rest.push_back(c);
  std::size_t board_missing = 5 - board.size();
  std::size_t need = board_missing + 2 * static_cast<std::size_t>(n_opponents);
  if (rest.size() < need) throw std::invalid_argument("deck too small for the requested completion");

  Rng rng(seed);
  std::array<Card, 7> hero_cards;
  std::array<Card, 7> opp_cards;
  hero_cards[0] = hole[0];
  hero_cards[1] = hole[1];
  std::copy(board.begin(), board.end(), hero_cards.begin() + 2);
  double total = 0;
  for (int s = 0; s < samples; ++s) {
    // Partial Fisher-Yates, drawn lazily: board first, then each opponent's
    // pair only once the opponent is evaluated.
    std::size_t drawn = 0;
    auto draw = [&] {
      std::size_t j = drawn + rng.below(rest.size() - drawn);
      std::swap(rest[drawn], rest[j]);
      return rest[drawn++];
    };
    for (std::size_t i = 0; i < board_missing; ++i) hero_cards[2 + board.size() + i] = draw();
    HandValue hero = evaluate_cards(hero_cards);
    std::copy(hero_cards.begin() + 2, hero_cards.end(), opp_cards.begin() + 2);
    int ties = 0;
    bool lost = false;
    for (int o = 0; o < n_opponents && !lost; ++o) {
      opp_cards[0] = draw();
      opp_cards[1] = draw();
      HandValue v = evaluate_cards(opp_cards);
      if (v > hero) lost = true;
      else if (v == hero) ++ties;
    }
    if (!lost) total += 1.0 / (ties + 1);
  }
  return total / samples;
}

double EquityParams::call_for(int n_opponents) const {
  return call_threshold.value_or(0.3 + 0.05 * (n_opponents - 1));
}

double EquityParams::raise_for(int) const { return raise_threshold.value_or(0.6); }

namespace {

int live_opponents(const GameState& state) {
  int live = 0;
  for (const auto& p : state.players()) live += p.folded ? 0 : 1;
  return live - 1;
}

PolicyDecision aggressive_to(const LegalActionSet& legal, Money target) {
  Money snapped = snap_amount(std::max(target, legal.min_to), legal.menu);
  if (snapped < legal.min_to) snapped = legal.max_to;
  if (snapped >= legal.max_to) return {ActionKind::AllIn, Money{}};
  return {legal.contains(ActionKind::Bet) ? ActionKind::Bet : ActionKind::Raise, snapped};
}

}  // namespace

PolicyDecision fallback_decision(const GameState& state) {
  LegalActionSet legal = state.legal_actions();
  if (legal.contains(ActionKind::Check)) return {ActionKind::Check, Money{}};
  return {ActionKind::Fold, Money{}};
}

PolicyDecision equity_decision(const GameState& state, double equity, double call_threshold, double raise_threshold) {
  LegalActionSet legal = state.legal_actions();
  if (legal.kinds.empty()) throw std::logic_error("no player to act");
  if (equity > raise_threshold) {
    if (legal.contains(ActionKind::Bet) || legal.contains(ActionKind::Raise)) {
      Money pot = state.pot_total();
      Money half = Money::from_minor((pot.minor() + 1) / 2);
      return aggressive_to(legal, half);
    }
    if (legal.contains(ActionKind::AllIn) && !legal.contains(ActionKind::Call) && !legal.contains(ActionKind::Check))
      return {ActionKind::AllIn, Money{}};
  }
  if (equity > call_threshold) {
    if (legal.contains(ActionKind::Check)) return {ActionKind::Check, Money{}};
    if (legal.contains(ActionKind::Call)) return {ActionKind::Call, Money{}};
    if (legal.contains(ActionKind::AllIn)) return {ActionKind::AllIn, Money{}};
  }
  return fallback_decision(state);
}

PolicyDecision EquityPolicy::decide(const GameState& state) {
  if (!state.to_act()) throw std::logic_error("no player to act");
  const PlayerState& me = state.player(*state.to_act());
  if (!me.hole) throw std::logic_error("equity policy needs the actor's hole cards");
  int opp = live_opponents(state);
  last_equity_ = mc_equity(*me.hole, state.board(), opp, params_.samples, rng_.next());
  return equity_decision(state, last_equity_, params_.call_for(opp), params_.raise_for(opp));
}

PolicyDecision RandomPolicy::decide(const GameState& state) {
  LegalActionSet legal = state.legal_actions();
  if (legal.kinds.empty()) throw std::logic_error("no player to act");
  ActionKind k = legal.kinds[rng_.below(legal.kinds.size())];
  if (k == ActionKind::Bet || k == ActionKind::Raise) {
    std::vector<Money> options;
    for (Money m : legal.menu)
      if (m >= legal.min_to) options.push_back(m);
    Money to = options[rng_.below(options.size())];
    if (to >= legal.max_to) return {ActionKind::AllIn, Money{}};
    return {k, to};
  }
  return {k, Money{}};
}

std::string ScriptedPolicy::name() const {
  switch (mode_) {
    case Mode::CheckCall: return "call";
    case Mode::CheckFold: return "fold";
    case Mode::Raise: return "raise";
  }
  return "scripted";
}

PolicyDecision ScriptedPolicy::decide(const GameState& state) {
  LegalActionSet legal = state.legal_actions();
  if (legal.kinds.empty()) throw std::logic_error("no player to act");
  if (mode_ == Mode::Raise && (legal.contains(ActionKind::Bet) || legal.contains(ActionKind::Raise)))
    return aggressive_to(legal, legal.min_to);
  if (mode_ == Mode::CheckFold) return fallback_decision(state);
  if (legal.contains(ActionKind::Check)) return {ActionKind::Check, Money{}};
  if (legal.contains(ActionKind::Call)) return {ActionKind::Call, Money{}};
  return {ActionKind::AllIn, Money{}};
}

PolicyDecision parse_action_text(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  static const std::regex verb(
      R"((^|[^a-z])(all[- _]?in|folds?|checks?|calls?|bets?|raises?)(?![a-z]))");
  std::smatch m;
  if (!std::regex_search(lower, m, verb)) throw UnparseableResponse("no action in response: " + std::string(text));
  std::string v = m[2].str();
  PolicyDecision d;
  if (v.rfind("all", 0) == 0) d.kind = ActionKind::AllIn;
  else if (v.rfind("fold", 0) == 0) d.kind = ActionKind::Fold;
  else if (v.rfind("check", 0) == 0) d.kind = ActionKind::Check;
  else if (v.rfind("call", 0) == 0) d.kind = ActionKind::Call;
  else if (v.rfind("bet", 0) == 0) d.kind = ActionKind::Bet;
  else d.kind = ActionKind::Raise;
  if (d.kind == ActionKind::Bet || d.kind == ActionKind::Raise) {
    std::string after = m.suffix().str();
    static const std::regex amount(R"(^\s*(?:to\s+)?\$?([0-9]+(?:\.[0-9]+)?|\.[0-9]+))");
    std::smatch a;
    if (!std::regex_search(after, a, amount))
      throw UnparseableResponse("no amount for " + v + " in response: " + std::string(text));
    try {
      d.amount = parse_money(a[1].str());
    } catch (const MoneyFormatError&) {
      d.amount = money_from_double(std::stod(a[1].str()));
    }
  }
  return d;
}

std::string format_response(const PolicyDecision& d) {
  switch (d.kind) {
    case ActionKind::Fold: return "You should fold.";
    case ActionKind::Check: return "You should check.";
    case ActionKind::Call: return "You should call.";
    case ActionKind::Bet: return "You should bet " + format_money(d.amount) + ".";
    case ActionKind::Raise: return "You should raise to " + format_money(d.amount) + ".";
    case ActionKind::AllIn: return "You should go all-in.";
    default: throw std::invalid_argument("not a decision");
  }
}

PolicyDecision conform_decision(const GameState& state, PolicyDecision d) {
  LegalActionSet legal = state.legal_actions();
  if (legal.kinds.empty()) throw std::logic_error("no player to act");
  bool aggressive_ok = legal.contains(ActionKind::Bet) || legal.contains(ActionKind::Raise);
  switch (d.kind) {
    case ActionKind::Fold: return d;
    case ActionKind::Check:
      return legal.contains(ActionKind::Check) ? d : fallback_decision(state);
    case ActionKind::Call:
      if (legal.contains(ActionKind::Call)) return {ActionKind::Call, Money{}};
      if (legal.contains(ActionKind::Check)) return {ActionKind::Check, Money{}};
      if (legal.contains(ActionKind::AllIn)) return {ActionKind::AllIn, Money{}};
      return fallback_decision(state);
    case ActionKind::Bet:
    case ActionKind::Raise:
      if (aggressive_ok) return aggressive_to(legal, d.amount);
      if (legal.contains(ActionKind::AllIn)) return {ActionKind::AllIn, Money{}};
      return fallback_decision(state);
    case ActionKind::AllIn:
      if (legal.contains(ActionKind::AllIn) || aggressive_ok) return {ActionKind::AllIn, Money{}};
      if (legal.contains(ActionKind::Call)) return {ActionKind::Call, Money{}};
      return fallback_decision(state);
    default:
      return fallback_decision(state);
  }
}

namespace {

struct Url {
  std::string base;  // scheme://host:port
  std::string path;
};

Url split_url(const std::string& endpoint) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(endpoint, m, re)) throw std::invalid_argument("bad endpoint URL: " + endpoint);
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

}  // namespace

RemoteReply remote_complete(const RemoteConfig& config, const std::string& prompt) {
  RemoteReply reply;
  Url url;
  try {
    url = split_url(config.endpoint);
  } catch (const std::exception& e) {
    reply.error = e.what();
    return reply;
  }
  nlohmann::json body = {{"prompt", prompt}, {"session_id", config.session_id}};
  std::string payload = body.dump();
  for (int attempt = 0; attempt <= config.retries; ++attempt) {
    httplib::Client client(url.base);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(config.timeout);
    auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    auto res = client.Post(url.path, payload, "application/json");
    if (!res) {
      reply.error = "request failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      reply.error = "endpoint returned HTTP " + std::to_string(res->status);
      continue;
    }
    try {
      auto j = nlohmann::json::parse(res->body);
      if (!j.contains("text") || !j["text"].is_string()) {
        reply.error = "response lacks a text field";
        continue;
      }
      reply.text = j["text"].get<std::string>();
      reply.error.clear();
      return reply;
    } catch (const nlohmann::json::exception& e) {
      reply.error = std::string("malformed response: ") + e.what();
    }
  }
  return reply;
}

RemotePolicy::Outcome RemotePolicy::query(const RemoteConfig& config, const GameState& state,
                                          const std::string& prompt) {
  Outcome out;
  RemoteReply reply = remote_complete(config, prompt);
  if (!reply.text) {
    out.fallback = true;
    out.error = reply.error;
    out.decision = fallback_decision(state);
    return out;
  }
  out.raw_text = *reply.text;
  try {
    out.decision = conform_decision(state, parse_action_text(*reply.text));
  } catch (const UnparseableResponse& e) {
    out.fallback = true;
    out.error = e.what();
    out.decision = fallback_decision(state);
  }
  return out;
}

PolicyDecision RemotePolicy::decide(const GameState& state) {
  if (!state.to_act()) throw std::logic_error("no player to act");
  int seat = state.player(*state.to_act()).seat_no;
  std::string prompt = build_prompt(decision_point_from_state(state, seat));
  Outcome o = query(config_, state, prompt);
  if (o.fallback) {
    ++fallbacks_;
    incidents_.push_back({config_.endpoint, o.error});
  }
  return o.decision;
}

PolicySpec PolicySpec::parse(std::string_view text) {
  PolicySpec s;
  std::string t(text);
  auto colon = t.find(':');
  std::string head = t.substr(0, colon);
  std::string arg = colon == std::string::npos ? std::string{} : t.substr(colon + 1);
  if (head == "equity") {
    s.kind = "equity";
    if (!arg.empty()) {
      try {
        std::size_t used = 0;
        s.samples = std::stoi(arg, &used);
        if (used != arg.size() || s.samples < 1) throw std::invalid_argument(arg);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad sample count in policy " + t);
      }
    }
  } else if (head == "random" || head == "call" || head == "fold" || head == "raise") {
    if (!arg.empty()) throw std::invalid_argument("policy " + head + " takes no argument");
    s.kind = head;
  } else if (head == "remote") {
    if (arg.empty()) throw std::invalid_argument("remote policy needs an endpoint URL");
    s.kind = "remote";
    s.endpoint = arg;
    split_url(arg);
  } else {
    throw std::invalid_argument("unknown policy " + t + " (equity[:N], random, call, fold, raise, remote:URL)");
  }
  return s;
}

std::string PolicySpec::to_string() const {
  if (kind == "equity") return "equity:" + std::to_string(samples);
  if (kind == "remote") return "remote:" + endpoint;
  return kind;
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::uint64_t seed, std::chrono::milliseconds remote_timeout) {
  if (spec.kind == "equity") {
    EquityParams p;
    p.samples = spec.samples;
    p.rng_seed = seed;
    return std::make_unique<EquityPolicy>(p);
  }
  if (spec.kind == "random") return std::make_unique<RandomPolicy>(seed);
  if (spec.kind == "call") return std::make_unique<ScriptedPolicy>(ScriptedPolicy::Mode::CheckCall);
  if (spec.kind == "fold") return std::make_unique<ScriptedPolicy>(ScriptedPolicy::Mode::CheckFold);
  if (spec.kind == "raise") return std::make_unique<ScriptedPolicy>(ScriptedPolicy::Mode::Raise);
  if (spec.kind == "remote") {
    RemoteConfig c;
    c.endpoint = spec.endpoint;
    c.timeout = remote_timeout;
    return std::make_unique<RemotePolicy>(c);
  }
  throw std::invalid_argument("unknown policy kind " + spec.kind);
}

}  // namespace poker
