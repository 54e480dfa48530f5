#include "poker/sim_harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "poker/hand_history.hpp"
#include "poker/rng.hpp"

namespace poker {

namespace {

using Clock = std::chrono::steady_clock;

struct HandOutcome {
  std::vector<Rational> deltas_bb;  // by policy index
  std::vector<GameTranscript> transcripts;
  std::vector<int> decisions;
  std::vector<double> seconds;
  std::vector<int> fallbacks;
  std::vector<Incident> incidents;
  HandRecord record;
};

std::string player_name(int policy) { return "P" + std::to_string(policy + 1); }

HandOutcome play_hand(const MatchSpec& spec, int h) {
  const int n = static_cast<int>(spec.seat_policies.size());
  std::uint64_t seed = hand_seed(spec.base_seed, h);
  std::vector<int> assign = seat_rotation(spec, h);

  TableConfig config;
  for (int s = 0; s < n; ++s) config.seats.push_back({s + 1, player_name(assign[s]), spec.starting_stack});
  config.blinds = spec.blinds;
  config.dealer_seat = 1;
  config.rng_seed = seed;

  std::vector<std::unique_ptr<Policy>> policies;
  for (int k = 0; k < n; ++k)
    policies.push_back(make_policy(spec.seat_policies[k], derive_seed(seed, static_cast<std::uint64_t>(k) + 1),
                                   spec.remote_timeout));

  HandOutcome out;
  out.decisions.assign(n, 0);
  out.seconds.assign(n, 0.0);
  out.fallbacks.assign(n, 0);

  GameState state = GameState::new_hand(config);
  while (!state.is_terminal()) {
    if (state.awaiting_board()) throw std::logic_error("simulated hand ran out of cards");
    int idx = *state.to_act();
    int k = assign[idx];
    auto t0 = Clock::now();
    PolicyDecision d = policies[k]->decide(state);
    out.seconds[k] += std::chrono::duration<double>(Clock::now() - t0).count();
    ++out.decisions[k];
    try {
      state.apply(d);
    } catch (const IllegalAction& e) {
      throw std::logic_error("policy " + spec.seat_policies[k].to_string() + " chose illegal " + to_string(d) + ": " +
                             e.what());
    }
    if (!state.chips_conserved()) throw std::logic_error("chip conservation violated in hand " + std::to_string(h));
  }

  auto deltas = state.final_deltas();
  Money sum;
  out.deltas_bb.assign(n, Rational{});
  for (int s = 0; s < n; ++s) {
    Money d = deltas.at(s + 1);
    sum += d;
    out.deltas_bb[assign[s]] = Rational(d.minor(), spec.blinds.big_blind.minor());
  }
  if (!sum.is_zero()) throw std::logic_error("hand " + std::to_string(h) + " is not zero-sum");

  out.record = state.to_record("SIM" + std::to_string(spec.base_seed) + "-" + std::to_string(h));
  for (int k = 0; k < n; ++k) {
    out.transcripts.push_back(transcript_for(out.record, player_name(k)));
    out.fallbacks[k] = policies[k]->fallbacks();
    if (auto* remote = dynamic_cast<RemotePolicy*>(policies[k].get()))
      for (const auto& inc : remote->incidents()) out.incidents.push_back(inc);
  }
  return out;
}

double stddev_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

void MatchSpec::validate() const {
  int n = static_cast<int>(seat_policies.size());
  if (n < kMinPlayers) throw std::invalid_argument("at least 2 seats required");
  if (n > kMaxPlayers) throw std::invalid_argument("at most 15 seats allowed");
  if (hands < 1) throw std::invalid_argument("hands must be at least 1");
  if (blinds.small_blind <= Money{}) throw std::invalid_argument("small blind must be positive");
  if (blinds.big_blind <= blinds.small_blind) throw std::invalid_argument("big blind must exceed small blind");
  if (starting_stack < blinds.big_blind) throw std::invalid_argument("starting stack must cover the big blind");
  if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  if (!(error_budget >= 0.0 && error_budget <= 1.0)) throw std::invalid_argument("error budget must be in [0, 1]");
}

std::vector<int> seat_rotation(const MatchSpec& spec, int hand_index) {
  int n = static_cast<int>(spec.seat_policies.size());
  std::vector<int> assign(n);
  int shift = spec.rotation ? hand_index % n : 0;
  for (int s = 0; s < n; ++s) assign[s] = (s + shift) % n;
  return assign;
}

MatchResult run_match(const MatchSpec& spec) {
  spec.validate();
  const int n = static_cast<int>(spec.seat_policies.size());
  const int allowed = static_cast<int>(std::floor(spec.error_budget * spec.hands));

  std::vector<std::optional<HandOutcome>> results(spec.hands);
  std::atomic<int> next{0};
  std::atomic<int> fallback_hands{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> aborted{false};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (;;) {
      if (stop.load()) return;
      int h = next.fetch_add(1);
      if (h >= spec.hands) return;
      try {
        HandOutcome o = play_hand(spec, h);
        bool fell_back = false;
        for (int f : o.fallbacks) fell_back |= f > 0;
        results[h] = std::move(o);
        if (fell_back && fallback_hands.fetch_add(1) + 1 > allowed) {
          aborted.store(true);
          stop.store(true);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        stop.store(true);
      }
    }
  };
  int jobs = std::min(spec.jobs, spec.hands);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  MatchResult res;
  res.aborted = aborted.load();
  res.policies.resize(n);
  std::vector<std::vector<GameTranscript>> transcripts(n);
  for (int k = 0; k < n; ++k) {
    res.policies[k].label = player_name(k) + " " + spec.seat_policies[k].to_string();
    res.policies[k].spec = spec.seat_policies[k];
  }
  for (auto& r : results) {
    if (!r) continue;
    ++res.hands_played;
    for (int k = 0; k < n; ++k) {
      MatchStats& st = res.policies[k];
      st.deltas_bb.push_back(r->deltas_bb[k]);
      st.decisions += r->decisions[k];
      st.decision_seconds += r->seconds[k];
      st.fallbacks += r->fallbacks[k];
      transcripts[k].push_back(std::move(r->transcripts[k]));
    }
    for (auto& inc : r->incidents) res.incidents.push_back(std::move(inc));
    if (spec.keep_records) res.records.push_back(std::move(r->record));
  }
  for (int k = 0; k < n; ++k) {
    MatchStats& st = res.policies[k];
    st.hands = static_cast<int>(st.deltas_bb.size());
    for (const auto& d : st.deltas_bb) st.net_bb += d;
    MbbResult m = mbb_per_hand(st.deltas_bb);
    st.mbb_h = m.mean;
    st.stddev = m.stddev;
    st.action_scores = action_scores(transcripts[k]);
    st.avg_investment_bb = average_investment(transcripts[k]);
  }
  return res;
}

nlohmann::json match_report(const MatchSpec& spec, const MatchResult& result, bool include_timing) {
  nlohmann::json seats = nlohmann::json::array();
  for (const auto& p : spec.seat_policies) seats.push_back(p.to_string());
  nlohmann::json j;
  j["spec"] = {{"seat_policies", seats},
               {"hands", spec.hands},
               {"blinds", format_money(spec.blinds.small_blind) + "/" + format_money(spec.blinds.big_blind)},
               {"starting_stack", format_money(spec.starting_stack)},
               {"base_seed", spec.base_seed},
               {"rotation", spec.rotation},
               {"error_budget", spec.error_budget}};
  j["hands_played"] = result.hands_played;
  j["aborted"] = result.aborted;
  nlohmann::json pols = nlohmann::json::array();
  for (const auto& st : result.policies) {
    nlohmann::json scores;
    for (const auto& [cls, v] : st.action_scores) scores[std::string(action_class_name(cls))] = v;
    nlohmann::json p = {{"label", st.label},
                        {"policy", st.spec.to_string()},
                        {"hands", st.hands},
                        {"net_bb", st.net_bb.to_double()},
                        {"mbb_h", st.mbb_h.to_double()},
                        {"mbb_h_exact", st.mbb_h.to_string()},
                        {"stddev", st.stddev},
                        {"action_scores", scores},
                        {"avg_investment_bb", st.avg_investment_bb.to_double()},
                        {"decisions", st.decisions},
                        {"fallbacks", st.fallbacks}};
    if (include_timing) p["mean_response_s"] = st.mean_response_s();
    pols.push_back(p);
  }
  j["policies"] = pols;
  nlohmann::json inc = nlohmann::json::array();
  for (const auto& i : result.incidents) inc.push_back({{"policy", i.policy}, {"message", i.message}});
  j["incidents"] = inc;
  return j;
}

std::string transcript_text(const MatchResult& result) {
  std::string out;
  for (const auto& r : result.records) {
    out += serialize_hand(r);
    out += "\n";
  }
  return out;
}

ResponseTime measure_response_time(Policy& policy, std::span<const GameState> states) {
  std::vector<double> times;
  for (const auto& s : states) {
    if (s.is_terminal() || !s.to_act()) continue;
    auto t0 = Clock::now();
    policy.decide(s);
    times.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
  }
  ResponseTime rt;
  rt.samples = static_cast<int>(times.size());
  if (times.empty()) return rt;
  for (double t : times) rt.mean_s += t;
  rt.mean_s /= static_cast<double>(times.size());
  rt.stddev_s = stddev_of(times);
  return rt;
}

std::vector<GameState> sample_states(int players, int count, std::uint64_t seed) {
  if (players < kMinPlayers || players > kMaxPlayers) throw std::invalid_argument("player count must be 2..15");
  std::vector<GameState> out;
  RandomPolicy random(derive_seed(seed, 0));
  for (int h = 0; static_cast<int>(out.size()) < count; ++h) {
    TableConfig config;
    for (int s = 0; s < players; ++s) config.seats.push_back({s + 1, player_name(s), Money::from_minor(200)});
    config.blinds = {Money::from_minor(1), Money::from_minor(2)};
    config.dealer_seat = 1;
    config.rng_seed = hand_seed(seed, h);
    GameState state = GameState::new_hand(config);
    while (!state.is_terminal() && static_cast<int>(out.size()) < count) {
      out.push_back(state);
      state.apply(random.decide(state));
    }
  }
  return out;
}

std::vector<SweepRow> player_sweep(const PolicySpec& hero, const PolicySpec& field, int min_players, int max_players,
                                   int hands, std::uint64_t seed, int jobs) {
  if (min_players < kMinPlayers || max_players > kMaxPlayers || min_players > max_players)
    throw std::invalid_argument("player range must lie within 2..15");
  std::vector<SweepRow> rows;
  for (int n = min_players; n <= max_players; ++n) {
    MatchSpec spec;
    spec.seat_policies.push_back(hero);
    for (int k = 1; k < n; ++k) spec.seat_policies.push_back(field);
    spec.hands = hands;
    spec.base_seed = derive_seed(seed, static_cast<std::uint64_t>(n));
    spec.jobs = jobs;
    MatchResult r = run_match(spec);
    SweepRow row;
    row.players = n;
    row.hero = r.policies[0];
    Rational sum;
    for (int k = 1; k < n; ++k) sum += r.policies[k].mbb_h;
    row.field_mbb_h = sum / Rational(n - 1);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace poker
