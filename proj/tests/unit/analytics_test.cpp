#include <doctest.h>

#include "../support.hpp"
#include "hands.hpp"
#include "poker/player_analytics.hpp"

using namespace poker;
namespace ts = testing_support;
using K = ActionKind;
using hands::act;

namespace {

// Hand where the named seat nets `delta_minor` and the other loses it.
HandRecord synthetic(const std::string& id, const std::string& a, const std::string& b, std::int64_t delta_minor) {
  HandRecord r;
  r.hand_id = id;
  r.blinds = {Money::from_minor(1), Money::from_minor(2)};
  r.seats = {{1, a, Money::from_minor(200)}, {2, b, Money::from_minor(200)}};
  r.results[a] = Money::from_minor(delta_minor);
  r.results[b] = Money::from_minor(-delta_minor);
  return r;
}

std::vector<HandRecord> corpus_records() {
  std::vector<HandRecord> out;
  for (auto& h : ts::load_corpus().hands) out.push_back(h.record);
  return out;
}

}  // namespace

TEST_CASE("hand deltas in big blinds") {
  HandRecord folded = hands::folded_hand();
  CHECK(hand_delta_bb(folded, "P3") == Rational(-1));
  CHECK(hand_delta_bb(folded, "P2") == Rational(-1, 2));
  CHECK(hand_delta_bb(folded, "P1") == Rational(3, 2));
  CHECK_THROWS(hand_delta_bb(folded, "nobody"));
  // UTG folds before putting anything in.
  auto t = hands::table({200, 200, 200, 200});
  GameState four = hands::play(t, hands::deal({hands::kHoles[0], hands::kHoles[1], hands::kHoles[2], hands::kHoles[3]}, {}),
                               {act(K::Fold), act(K::Raise, 6), act(K::Fold), act(K::Fold)});
  CHECK(hand_delta_bb(four.to_record("4"), "P4") == Rational(0));
  // Matches the engine's own accounting.
  GameState s = replay_record(folded);
  CHECK(Rational(s.final_deltas().at(3).minor(), 2) == hand_delta_bb(folded, "P3"));
}

TEST_CASE("win rates") {
  std::vector<HandRecord> hands;
  for (int i = 0; i < 10; ++i) hands.push_back(synthetic(std::to_string(i), "Win", "Lose", 1));
  auto stats = compute_stats(hands);
  CHECK(stats.at("Win").hands_played == 10);
  CHECK(stats.at("Win").net_bb == Rational(5));
  CHECK(stats.at("Win").win_rate_mbb_h == Rational(500));
  CHECK(compute_stats({}).empty());

  std::vector<HandRecord> even = {synthetic("a", "X", "Y", 2), synthetic("b", "X", "Y", -2)};
  CHECK(compute_stats(even).at("X").win_rate_mbb_h == Rational(0));
}

TEST_CASE("ranking and thresholds") {
  std::vector<HandRecord> hands;
  for (int i = 0; i < 7; ++i) hands.push_back(synthetic("l" + std::to_string(i), "Lucky", "Fish", 100));
  for (int i = 0; i < 120; ++i) hands.push_back(synthetic("r" + std::to_string(i), "Reg", "Fish", i % 2 ? 4 : -2));
  auto stats = compute_stats(hands);
  auto ranked = rank_players(stats, 100);
  REQUIRE(ranked.size() == 2);
  CHECK(ranked[0].player_name == "Reg");
  CHECK(ranked[1].player_name == "Fish");
  CHECK(rank_players(stats, 1000).empty());
  auto all = rank_players(stats, 0);
  CHECK(all[0].player_name == "Lucky");
}

TEST_CASE("dataset bands") {
  auto iii = WinRateBand::dataset("III");
  CHECK_FALSE(iii.contains(Rational(1500)));
  CHECK(iii.contains(Rational(1501)));
  auto iv = WinRateBand::dataset("IV");
  CHECK(iv.contains(Rational(600)));
  CHECK(iv.contains(Rational(1200)));
  CHECK_FALSE(iv.contains(Rational(1201)));
  auto v = WinRateBand::dataset("V");
  CHECK(v.contains(Rational(0)));
  CHECK(v.contains(Rational(500)));
  auto vi = WinRateBand::dataset("VI");
  CHECK(vi.contains(Rational(-1)));
  CHECK_FALSE(vi.contains(Rational(0)));
  CHECK_THROWS(WinRateBand::dataset("VII"));
}

TEST_CASE("partitions on the corpus") {
  auto records = corpus_records();
  auto stats = compute_stats(records);
  std::set<std::pair<std::size_t, std::string>> seen;
  for (const char* name : {"III", "IV", "V", "VI"}) {
    auto band = WinRateBand::dataset(name);
    auto tagged = partition_hands(records, band, stats);
    CHECK_FALSE(tagged.empty());
    for (const auto& t : tagged) {
      CHECK(has_revealed_showdown(records[t.index]));
      for (const auto& hero : t.heroes) {
        CHECK(band.contains(stats.at(hero).win_rate_mbb_h));
        CHECK(records[t.index].hole_cards.count(hero) == 1);
        CHECK(seen.insert({t.index, hero}).second);
      }
    }
  }
  auto negative = partition_hands(records, WinRateBand::dataset("VI"), stats);
  for (const auto& t : negative)
    for (const auto& hero : t.heroes) CHECK(stats.at(hero).win_rate_mbb_h < Rational(0));
}

TEST_CASE("revenue histogram") {
  auto edges = uniform_edges(-2, 2, 4);
  CHECK(edges == std::vector<double>{-2, -1, 0, 1, 2});
  std::vector<double> zero = {0.0};
  auto h = revenue_histogram(zero, edges);
  CHECK(h[2].count == 1);
  std::vector<double> sym = {-1.5, 1.5, -0.5, 0.5, -5, 5};
  auto s = revenue_histogram(sym, edges);
  std::size_t total = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].count == s[s.size() - 1 - i].count);
    total += s[i].count;
  }
  CHECK(total == sym.size());
}

TEST_CASE("staged deltas group by exit street") {
  std::vector<HandRecord> hs = {hands::folded_hand(), hands::showdown_hand()};
  auto staged = staged_deltas(hs, {"P3"});
  REQUIRE(staged.count(Street::Preflop));
  CHECK(staged.at(Street::Preflop) == std::vector<double>{-1.0});
  REQUIRE(staged.count(Street::Showdown));
  CHECK(staged.at(Street::Showdown).size() == 1);
}
