#include <doctest.h>

#include "../oracles.hpp"
#include "hands.hpp"
#include "poker/amount_grid.hpp"
#include "poker/game_engine.hpp"

using namespace poker;
using hands::act;
using hands::c;
using K = ActionKind;

namespace {

std::vector<ActionKind> kinds(const GameState& s) { return s.legal_actions().kinds; }

}  // namespace

TEST_CASE("fixed seed gives the same deal") {
  TableConfig t = hands::table({200, 200, 200, 200, 200, 200});
  t.rng_seed = 1234;
  GameState a = GameState::new_hand(t);
  GameState b = GameState::new_hand(t);
  for (int i = 0; i < 6; ++i) CHECK(*a.player(i).hole == *b.player(i).hole);
  t.rng_seed = 1235;
  GameState d = GameState::new_hand(t);
  bool differs = false;
  for (int i = 0; i < 6; ++i) differs = differs || *a.player(i).hole != *d.player(i).hole;
  CHECK(differs);
}

TEST_CASE("blind positions") {
  GameState three = GameState::new_hand(hands::table({200, 200, 200}));
  CHECK(three.player(three.small_blind_index()).seat_no == 2);
  CHECK(three.player(three.big_blind_index()).seat_no == 3);
  CHECK(three.player(*three.to_act()).seat_no == 1);
  CHECK(three.pot_total() == c(3));

  GameState hu = GameState::new_hand(hands::table({200, 200}));
  CHECK(hu.player(hu.small_blind_index()).seat_no == 1);
  CHECK(hu.player(hu.big_blind_index()).seat_no == 2);
  CHECK(hu.player(*hu.to_act()).seat_no == 1);
}

TEST_CASE("short stack posts all-in from the blind") {
  GameState s = GameState::new_hand(hands::table({200, 200, 1}));
  const PlayerState& bb = s.player(s.big_blind_index());
  CHECK(bb.all_in);
  CHECK(bb.stack == Money{});
  CHECK(bb.street_contrib == c(1));
  CHECK(s.chips_conserved());
}

TEST_CASE("legal action sets") {
  GameState s = GameState::new_hand(hands::table({200, 200, 200}));
  s.apply(act(K::Raise, 6));
  CHECK(kinds(s) == std::vector<ActionKind>{K::Fold, K::Raise, K::Call});
  LegalActionSet legal = s.legal_actions();
  CHECK(legal.contains(K::AllIn));
  CHECK_FALSE(legal.contains(K::Check));
  CHECK(legal.call_amount == c(5));
  CHECK(legal.min_to == c(10));
  CHECK(legal.max_to == c(200));
  CHECK(legal.menu == amount_menu(c(2), c(200)));

  s.apply(act(K::Call));
  s.apply(act(K::Call));
  CHECK(s.street() == Street::Flop);
  CHECK(kinds(s) == std::vector<ActionKind>{K::Fold, K::Check, K::Bet});

  GameState short_stack = GameState::new_hand(hands::table({200, 200, 10}));
  short_stack.apply(act(K::Raise, 20));
  short_stack.apply(act(K::Fold));
  CHECK(kinds(short_stack) == std::vector<ActionKind>{K::Fold, K::AllIn});
}

TEST_CASE("checking through advances without changing the pot") {
  GameState s = GameState::new_hand(hands::table({200, 200, 200}));
  s.apply(act(K::Call));
  s.apply(act(K::Call));
  s.apply(act(K::Check));
  CHECK(s.street() == Street::Flop);
  Money pot = s.pot_total();
  for (int i = 0; i < 3; ++i) s.apply(act(K::Check));
  CHECK(s.street() == Street::Turn);
  CHECK(s.pot_total() == pot);
  CHECK(s.board().size() == 4);
}

TEST_CASE("raise sizing rules") {
  GameState s = GameState::new_hand(hands::table({200, 200, 200}));
  CHECK_THROWS_AS(s.apply(act(K::Raise, 3)), IllegalAction);
  CHECK_THROWS_AS(s.apply(act(K::Check)), IllegalAction);
  CHECK_THROWS_AS(s.apply(act(K::Bet, 10)), IllegalAction);
  CHECK_THROWS_AS(s.apply(act(K::Raise, 500)), IllegalAction);
  Money before = s.pot_total();
  CHECK(s.pot_total() == before);
  s.apply(act(K::Raise, 4));
  CHECK(s.min_raise() == c(2));
  CHECK_THROWS_AS(s.apply(act(K::Raise, 5)), IllegalAction);
  s.apply(act(K::Raise, 10));
  CHECK(s.min_raise() == c(6));
  CHECK(s.legal_actions().min_to == c(16));
}

TEST_CASE("incomplete all-in does not reopen betting") {
  // P1 raises to 10, P2 shoves 14 (short of a full raise to 18), P3 folds.
  GameState s = GameState::new_hand(hands::table({200, 14, 200}));
  s.apply(act(K::Raise, 10));
  s.apply(act(K::AllIn));
  s.apply(act(K::Fold));
  REQUIRE(s.to_act());
  CHECK(s.player(*s.to_act()).seat_no == 1);
  CHECK(kinds(s) == std::vector<ActionKind>{K::Fold, K::Call});
  CHECK_FALSE(s.legal_actions().contains(K::AllIn));
  CHECK_THROWS_AS(s.apply(act(K::Raise, 40)), IllegalAction);
}

TEST_CASE("uncalled bets are returned") {
  GameState s = GameState::new_hand(hands::table({200, 200, 200}));
  s.apply(act(K::Raise, 20));
  s.apply(act(K::Fold));
  s.apply(act(K::Fold));
  CHECK(s.is_terminal());
  REQUIRE(s.uncalled().size() == 1);
  CHECK(s.uncalled()[0].amount == c(18));
  auto deltas = s.final_deltas();
  CHECK(deltas.at(1) == c(3));
  CHECK(deltas.at(2) == c(-1));
  CHECK(deltas.at(3) == c(-2));
  CHECK(s.chips_conserved());
}

TEST_CASE("board waits for cards when none are dealt in advance") {
  DealSpec d;
  d.holes[1] = {parse_card("As"), parse_card("Ah")};
  GameState s = GameState::new_hand(hands::table({200, 200}), d);
  s.apply(act(K::Call));
  s.apply(act(K::Check));
  CHECK(s.awaiting_board());
  CHECK(s.cards_needed() == 3);
  CHECK_THROWS(s.apply(act(K::Check)));
  std::vector<Card> wrong = {parse_card("2c")};
  CHECK_THROWS(s.deal_board(wrong));
  std::vector<Card> dup = {parse_card("As"), parse_card("2c"), parse_card("3c")};
  CHECK_THROWS(s.deal_board(dup));
  std::vector<Card> flop = {parse_card("2c"), parse_card("3c"), parse_card("4c")};
  s.deal_board(flop);
  CHECK_FALSE(s.awaiting_board());
  CHECK(s.street() == Street::Flop);
}

TEST_CASE("identical board-playing hands split evenly") {
  auto t = hands::table({100, 100});
  auto d = hands::deal({{"2c", "3d"}, {"2d", "3c"}}, {"As", "Ks", "Qd", "Jh", "Tc"});
  GameState s = hands::play(t, d, {act(K::Call), act(K::Check), act(K::Check), act(K::Check), act(K::Check),
                                   act(K::Check), act(K::Check), act(K::Check)});
  REQUIRE(s.is_terminal());
  auto pay = s.resolve_showdown();
  CHECK(pay.at(1) == c(2));
  CHECK(pay.at(2) == c(2));
}

TEST_CASE("side-pot fixtures") {
  for (const auto& f : oracle::side_pot_fixtures()) {
    CAPTURE(f.name);
    auto out = oracle::play_fixture(f);
    CHECK(out.terminal);
    CHECK(out.conserved_throughout);
    CHECK(out.payouts == f.payouts);
    CHECK(out.deltas == f.deltas);
  }
}

TEST_CASE("short all-in caps the main pot") {
  auto t = hands::table({30, 200, 200});
  auto d = hands::deal({hands::kHoles[0], hands::kHoles[1], hands::kHoles[2]}, hands::kBoard);
  GameState s = hands::play(t, d, {act(K::AllIn), act(K::Call), act(K::Call)});
  REQUIRE(!s.is_terminal());
  CHECK(s.street() == Street::Flop);
  s.apply(act(K::Bet, 50));
  s.apply(act(K::Call));
  REQUIRE(s.pots().size() == 2);
  CHECK(s.pots()[0].amount == c(90));
  CHECK(s.pots()[0].eligible_seats == std::vector<int>{1, 2, 3});
  CHECK(s.pots()[1].eligible_seats == std::vector<int>{2, 3});
}

TEST_CASE("records replay to the same state") {
  HandRecord r = hands::showdown_hand();
  GameState s = replay_record(r);
  CHECK(s.is_terminal());
  CHECK(s.final_deltas().at(1) == r.results.at("P1"));
  for (std::size_t k = 0; k <= r.actions.size(); ++k) CHECK(replay_prefix(r, k).chips_conserved());
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(hands::table({200}).validate(), std::invalid_argument);
  auto t = hands::table({200, 200});
  t.dealer_seat = 7;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  auto big = hands::table(std::vector<std::int64_t>(16, 200));
  CHECK_THROWS_AS(big.validate(), std::invalid_argument);
  auto inverted = hands::table({200, 200});
  inverted.blinds = {c(5), c(2)};
  CHECK_THROWS_AS(inverted.validate(), std::invalid_argument);
}

TEST_CASE("rake must fit inside the pot") {
  GameState s = replay_record(hands::showdown_hand());
  CHECK_THROWS_AS(s.to_record("x", c(-1)), std::invalid_argument);
  CHECK_THROWS_AS(s.to_record("x", s.pot_total() + c(1)), std::invalid_argument);
  HandRecord raked = s.to_record("x", c(1));
  Money total;
  for (const auto& [n, d] : raked.results) total += d;
  CHECK(total == c(-1));
}
