#include <doctest.h>

#include "../support.hpp"
#include "poker/sim_harness.hpp"

using namespace poker;
namespace ts = testing_support;

namespace {

MatchSpec spec_of(std::vector<std::string> policies, int hands, std::uint64_t seed) {
  MatchSpec m;
  for (const auto& p : policies) m.seat_policies.push_back(PolicySpec::parse(p));
  m.hands = hands;
  m.base_seed = seed;
  return m;
}

}  // namespace

TEST_CASE("seat rotation") {
  MatchSpec two = spec_of({"call", "fold"}, 2, 1);
  CHECK(seat_rotation(two, 0) == std::vector<int>{0, 1});
  CHECK(seat_rotation(two, 1) == std::vector<int>{1, 0});
  two.rotation = false;
  CHECK(seat_rotation(two, 1) == std::vector<int>{0, 1});

  MatchSpec six = spec_of({"call", "call", "call", "call", "call", "call"}, 6, 1);
  std::vector<std::set<int>> seats_held(6);
  for (int h = 0; h < 6; ++h) {
    auto r = seat_rotation(six, h);
    for (int s = 0; s < 6; ++s) seats_held[r[s]].insert(s);
  }
  for (const auto& held : seats_held) CHECK(held.size() == 6);
}

TEST_CASE("match results are zero-sum and reproducible") {
  MatchSpec m = spec_of({"equity:100", "random", "call"}, 200, 17);
  MatchResult a = run_match(m);
  m.jobs = 3;
  MatchResult b = run_match(m);
  CHECK(a.hands_played == 200);
  CHECK_FALSE(a.aborted);
  Rational total;
  for (const auto& p : a.policies) total += p.net_bb;
  CHECK(total == Rational(0));
  CHECK(match_report(m, a, false).dump() == match_report(m, b, false).dump());
  m.base_seed = 18;
  CHECK(match_report(m, run_match(m), false).dump() != match_report(m, a, false).dump());
}

TEST_CASE("report fields") {
  MatchSpec m = spec_of({"call", "fold"}, 20, 3);
  MatchResult r = run_match(m);
  auto j = match_report(m, r, true);
  CHECK(j.at("policies").size() == 2);
  auto p = j.at("policies")[0];
  for (const char* key : {"label", "mbb_h", "stddev", "action_scores", "avg_investment_bb", "mean_response_s"})
    CHECK(p.contains(key));
  CHECK_FALSE(match_report(m, r, false).at("policies")[0].contains("mean_response_s"));
}

TEST_CASE("kept records form a parseable transcript") {
  MatchSpec m = spec_of({"random", "random", "random"}, 25, 4);
  m.keep_records = true;
  MatchResult r = run_match(m);
  REQUIRE(r.records.size() == 25);
  ParsedFile f = parse_file(transcript_text(r));
  CHECK(f.hands.size() == 25);
  for (std::size_t i = 0; i < f.hands.size(); ++i) CHECK(f.hands[i].record == r.records[i]);
}

TEST_CASE("spec validation") {
  MatchSpec one = spec_of({"call"}, 10, 1);
  CHECK_THROWS_AS(one.validate(), std::invalid_argument);
  MatchSpec many = spec_of(std::vector<std::string>(16, "call"), 10, 1);
  CHECK_THROWS_AS(many.validate(), std::invalid_argument);
  MatchSpec none = spec_of({"call", "call"}, 0, 1);
  CHECK_THROWS_AS(none.validate(), std::invalid_argument);
}

TEST_CASE("error budget aborts a failing remote policy") {
  int port = 0;
  {
    ts::LocalServer gone([](httplib::Server&) {});
    port = gone.port();
  }
  MatchSpec m = spec_of({"call", "remote:http://127.0.0.1:" + std::to_string(port) + "/complete"}, 200, 1);
  m.remote_timeout = std::chrono::milliseconds(200);
  m.error_budget = 0.01;
  MatchResult r = run_match(m);
  CHECK(r.aborted);
  CHECK(r.hands_played < 200);
  CHECK_FALSE(r.incidents.empty());
}

TEST_CASE("response time measurement") {
  auto states = sample_states(3, 10, 2);
  REQUIRE(states.size() == 10);
  for (const auto& s : states) CHECK(s.to_act().has_value());

  auto scripted = make_policy(PolicySpec::parse("call"), 1);
  CHECK(measure_response_time(*scripted, states).mean_s < 0.001);

  auto equity = make_policy(PolicySpec::parse("equity"), 1);
  ResponseTime eq = measure_response_time(*equity, states);
  CHECK(eq.samples == 10);
  CHECK(eq.mean_s < 1.0);

  ts::LocalServer slow([](httplib::Server& s) { ts::install_stub_advisor(s, std::chrono::milliseconds(100)); });
  RemoteConfig cfg;
  cfg.endpoint = slow.url("/complete");
  RemotePolicy remote(cfg);
  std::vector<GameState> few(states.begin(), states.begin() + 3);
  ResponseTime rt = measure_response_time(remote, few);
  CHECK(rt.mean_s >= 0.1);
  CHECK(rt.mean_s < 0.3);
}

TEST_CASE("player sweep covers each count") {
  auto rows = player_sweep(PolicySpec::parse("equity:50"), PolicySpec::parse("random"), 2, 4, 30, 8);
  REQUIRE(rows.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(rows[i].players == i + 2);
    CHECK(rows[i].hero.hands == 30);
  }
}
