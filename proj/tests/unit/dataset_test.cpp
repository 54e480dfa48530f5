#include <doctest.h>

#include "../support.hpp"
#include "poker/dataset_emitter.hpp"
#include "poker/policies.hpp"

using namespace poker;
namespace ts = testing_support;

namespace {

const ts::Corpus& corpus() {
  static const ts::Corpus c = ts::load_corpus();
  return c;
}

std::map<std::string, PlayerStats> corpus_stats() {
  std::vector<HandRecord> r;
  for (const auto& h : corpus().hands) r.push_back(h.record);
  return compute_stats(r);
}

}  // namespace

TEST_CASE("reward score clamps at the top band edge") {
  CHECK(reward_score(Rational(1500)) == Rational(1));
  CHECK(reward_score(Rational(4000)) == Rational(1));
  CHECK(reward_score(Rational(0)) == Rational(0));
  CHECK(reward_score(Rational(-3000)) == Rational(-1));
  CHECK(reward_score(Rational(750)) == Rational(1, 2));
}

TEST_CASE("hand split sizes") {
  std::vector<std::string> ids;
  for (int i = 0; i < 1000; ++i) ids.push_back("h" + std::to_string(i));
  auto train = split_hands(ids, 5);
  CHECK(train.size() == 900);
  CHECK(split_hands(ids, 5) == train);
  CHECK(split_hands(ids, 6) != train);
  std::vector<std::string> eleven(ids.begin(), ids.begin() + 11);
  CHECK(split_hands(eleven, 1).size() == 10);
}

TEST_CASE("structured records are hand-atomic") {
  SftSplit s = emit_sft(corpus().hands, WinRateBand::all(), 9, 0);
  std::set<std::string> train, test;
  for (const auto& r : s.train) train.insert(r.hand_id);
  for (const auto& r : s.test) test.insert(r.hand_id);
  for (const auto& id : train) CHECK(test.count(id) == 0);
  CHECK(train.size() >= 9 * test.size());
  for (const auto& r : s.train) {
    CHECK(r.prompt.rfind("You are an experienced gambler.", 0) == 0);
    CHECK(r.response == format_response(r.label));
  }
}

TEST_CASE("band filter keeps matching heroes only") {
  auto stats = corpus_stats();
  SftSplit vi = emit_sft(corpus().hands, WinRateBand::dataset("VI"), 1, 100);
  REQUIRE_FALSE(vi.train.empty());
  for (const auto* part : {&vi.train, &vi.test})
    for (const auto& r : *part) {
      CHECK(stats.at(r.hero).win_rate_mbb_h < Rational(0));
      CHECK(stats.at(r.hero).hands_played >= 100);
    }
  CHECK_THROWS_AS(emit_sft(corpus().hands, WinRateBand::closed(Rational(100000), Rational(200000)), 1, 0),
                  EmptyDatasetError);
}

TEST_CASE("raw variant uses the verbatim log") {
  ParsedFile f = parse_path(ts::data_dir() / "reference_hand.txt");
  auto raw = emit_raw_variant(f.hands);
  // One record per decision of each revealed player, all sharing the log.
  REQUIRE(raw.size() == 8);
  std::string text = ts::read_text(ts::data_dir() / "reference_hand.txt");
  while (!text.empty() && text.back() == '\n') text.pop_back();
  for (const auto& r : raw) CHECK(r.prompt == text);
}

TEST_CASE("reward records carry scores") {
  auto stats = corpus_stats();
  auto reward = emit_reward(corpus().hands, stats, 3, 100);
  REQUIRE_FALSE(reward.empty());
  for (const auto& r : reward) {
    REQUIRE(r.score);
    CHECK(*r.score == reward_score(stats.at(r.hero).win_rate_mbb_h));
    CHECK((r.split == "train" || r.split == "test"));
    auto j = record_to_json(r);
    CHECK(j.contains("score"));
  }
}

TEST_CASE("build and write are deterministic") {
  ts::TempDir a, b;
  DatasetOptions opt;
  opt.variant = "III";
  opt.seed = 77;
  write_dataset(a.path(), build_dataset(corpus().hands, opt));
  write_dataset(b.path(), build_dataset(corpus().hands, opt));
  for (const char* f : {"sft_train.jsonl", "sft_test.jsonl", "reward.jsonl", "manifest.json"})
    CHECK(ts::read_text(a.path() / f) == ts::read_text(b.path() / f));
  auto manifest = nlohmann::json::parse(ts::read_text(a.path() / "manifest.json"));
  CHECK(manifest.at("variant") == "III");
  CHECK(manifest.at("seed") == 77);
}

TEST_CASE("variants") {
  DatasetOptions raw;
  raw.variant = "I";
  Dataset d1 = build_dataset(corpus().hands, raw);
  CHECK_FALSE(d1.train.empty());
  DatasetOptions bad;
  bad.variant = "IX";
  CHECK_THROWS(build_dataset(corpus().hands, bad));
}
