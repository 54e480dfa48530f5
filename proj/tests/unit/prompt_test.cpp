#include <doctest.h>

#include "../scenarios.hpp"
#include "../support.hpp"
#include "hands.hpp"
#include "poker/prompt_builder.hpp"

using namespace poker;
namespace ts = testing_support;
using K = ActionKind;

namespace {

std::string golden() {
  std::string g = ts::read_text(ts::data_dir() / "golden_prompt.txt");
  while (!g.empty() && g.back() == '\n') g.pop_back();
  return g;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("reference prompt renders byte for byte") {
  DecisionPoint dp = scenario::first_decision();
  CHECK(build_prompt(dp) == golden());
  std::string constant = build_constant_block(dp);
  std::string dynamic = build_dynamic_block(dp);
  CHECK(golden().rfind(constant, 0) == 0);
  CHECK(golden().find(dynamic) != std::string::npos);
  CHECK(constant.find("Player amount: [6]") != std::string::npos);
}

TEST_CASE("directive is appended on its own line") {
  DecisionPoint dp = scenario::first_decision();
  std::string p = build_prompt(dp, "Please be aggressive.");
  CHECK(p == golden() + "\nPlease be aggressive.");
}

TEST_CASE("engine state after the opening raise matches the reference fields") {
  GameState s = scenario::engine_after(scenario::preflop());
  DecisionPoint dp = decision_point_from_state(s, 2);
  CHECK(dp.pot == Money::from_minor(17));
  CHECK(dp.legal_actions == std::vector<ActionKind>{K::Fold, K::Raise, K::Call});
  CHECK(dp.amount_menu == scenario::first_decision().amount_menu);
  CHECK(dp.action_history.at(9) == std::vector<std::string>{"raises 0.05 to 0.1"});
  CHECK(dp.discard_flags.at(5));
  CHECK(dp.stacks.at(2) == Money::from_minor(392));
  auto l = lines(build_prompt(dp));
  CHECK(l.back() == lines(golden()).back());
}

TEST_CASE("flop prompt lists the unopened actions and the updated rank") {
  auto steps = scenario::preflop();
  for (int i = 0; i < 3; ++i) steps.push_back(scenario::to_flop_bet()[i]);
  GameState s = scenario::engine_after(steps);
  DecisionPoint dp = decision_point_from_state(s, 2);
  CHECK(dp.rank == HandCategory::Flush);
  std::string p = build_prompt(dp);
  CHECK(p.find("Stage: \"FLOP\", Public cards: ['7h' '4h' '2h' '**' '**']") != std::string::npos);
  CHECK(p.find("My rank: [\"Flush\"], Money: [3.82], Action: [\"call\"]") != std::string::npos);
  CHECK(p.find("The pot value is [0.3]") != std::string::npos);
  CHECK(p.find("The actions can be: [\"fold\", \"check\", \"bet\"]") != std::string::npos);
  CHECK(p.find("{0, 0.05, 0.15, 0.3, 0.5, 1, 2.5, 3.82}") != std::string::npos);
}

TEST_CASE("two-player prompt and shown opponent cards") {
  auto t = hands::table({200, 200});
  auto d = hands::deal({hands::kHoles[0], hands::kHoles[1]}, {});
  GameState s = GameState::new_hand(t, d);
  std::map<int, VisibleCards> shown;
  shown[2] = {parse_card("Ks"), std::nullopt};
  DecisionPoint dp = decision_point_from_state(s, 1, "h", shown);
  CHECK(build_constant_block(dp).find("Player amount: [2]") != std::string::npos);
  CHECK(build_dynamic_block(dp).find("Seat 2: ['Ks', '**']") != std::string::npos);
}

TEST_CASE("terminal state carries no question") {
  auto t = hands::table({200, 200, 200});
  GameState s = hands::play(t, hands::deal({hands::kHoles[0], hands::kHoles[1], hands::kHoles[2]}, {}),
                            {hands::act(K::Raise, 6), hands::act(K::Fold), hands::act(K::Fold)});
  DecisionPoint dp = decision_point_from_state(s, 2);
  CHECK(dp.terminal);
  std::string p = build_prompt(dp);
  CHECK(p.find("What should I do?") == std::string::npos);
}

TEST_CASE("decision points from the reference hand") {
  HandRecord r = parse_hand(ts::read_text(ts::data_dir() / "reference_hand.txt"));
  ExtractResult ex = extract_decision_points(r, "phalves77");
  REQUIRE(ex.points.size() == 4);
  CHECK(ex.points[0].street == Street::Preflop);
  CHECK(*ex.points[0].label_class == ActionClass::Raise);
  CHECK(ex.points[0].label->amount == Money::from_minor(15));
  for (int i = 1; i < 4; ++i) {
    CHECK(ex.points[i].street == static_cast<Street>(i));
    CHECK(*ex.points[i].label_class == ActionClass::Call);
  }
  ExtractResult other = extract_decision_points(r, "gefahrensucher");
  CHECK(other.points.size() == 4);
  CHECK(*other.points[1].label_class == ActionClass::Bet);
  CHECK(other.points[1].label->amount == Money::from_minor(30));
}

TEST_CASE("hero folding at once yields one decision point") {
  HandRecord r = hands::folded_hand();
  r.hole_cards["P2"] = {parse_card("Ks"), parse_card("Kh")};
  ExtractResult ex = extract_decision_points(r, "P2");
  REQUIRE(ex.points.size() == 1);
  CHECK(*ex.points[0].label_class == ActionClass::Fold);
}

TEST_CASE("bet labels snap up to the menu") {
  auto steps = scenario::preflop();
  auto flop = scenario::to_flop_bet();
  steps.insert(steps.end(), flop.begin(), flop.end());
  GameState s = scenario::engine_after(steps);
  HandRecord r = [&] {
    GameState done = s;
    done.apply({K::Fold, {}});
    done.apply({K::Fold, {}});
    return done.to_record("snap");
  }();
  r.hole_cards["Seat 9"] = {parse_card("Kc"), parse_card("Kd")};
  ExtractResult ex = extract_decision_points(r, "Seat 9");
  auto bet = std::find_if(ex.points.begin(), ex.points.end(),
                          [](const DecisionPoint& p) { return p.label_class == ActionClass::Bet; });
  REQUIRE(bet != ex.points.end());
  CHECK(bet->label_event->amount == Money::from_minor(22));
  CHECK(bet->label->amount == Money::from_minor(30));
}

TEST_CASE("hero without cards yields a diagnostic") {
  HandRecord r = hands::folded_hand();
  ExtractResult ex = extract_decision_points(r, "P2");
  CHECK(ex.points.empty());
  CHECK_FALSE(ex.diagnostics.empty());
}

TEST_CASE("template parsing") {
  const PromptTemplate& std_t = PromptTemplate::standard();
  CHECK(std_t.version() == "prompt.v1");
  CHECK(std_t.has_section("constant"));
  CHECK_THROWS_AS(std_t.render("nope", {}), PromptTemplateError);
  CHECK_THROWS_AS(std_t.render("winner", {}), PromptTemplateError);

  std::string text(prompt_asset_text());
  std::string without = text.substr(0, text.find("[winner]"));
  CHECK_THROWS_AS(PromptTemplate::parse(without), PromptTemplateError);
  CHECK_THROWS_AS(PromptTemplate::parse("stray\n" + text), PromptTemplateError);

  // A reworded template drives the same builder.
  std::string custom = text;
  custom.replace(custom.find("You are an experienced gambler."), 31, "You are a careful player.");
  PromptTemplate t = PromptTemplate::parse(custom);
  CHECK(build_prompt(scenario::first_decision(), {}, t).rfind("You are a careful player.", 0) == 0);
}
