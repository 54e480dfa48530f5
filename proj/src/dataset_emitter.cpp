#include "poker/dataset_emitter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "poker/policies.hpp"
#include "poker/rng.hpp"

namespace poker {

namespace {

std::string band_text(const WinRateBand& b) { return b.label.empty() ? b.to_string() : b.label; }

DatasetRecord record_from(const DecisionPoint& dp, std::string prompt) {
  DatasetRecord r;
  r.prompt = std::move(prompt);
  r.label = *dp.label;
  r.response = format_response(r.label);
  r.label_class = *dp.label_class;
  if (r.label.kind == ActionKind::Bet || r.label.kind == ActionKind::Raise) r.label_amount = r.label.amount;
  else if (r.label.kind == ActionKind::AllIn) r.label_amount = dp.amount_menu.back();
  r.hand_id = dp.hand_id;
  r.hero = dp.hero;
  r.street = dp.street;
  return r;
}

std::string raw_text_of(const ParsedHand& h) {
  return h.raw_text.empty() ? serialize_hand(h.record) : h.raw_text;
}

std::vector<std::string> revealed_players(const HandRecord& r) {
  std::vector<std::string> out;
  for (const auto& s : r.seats)
    if (r.hole_cards.count(s.player_name)) out.push_back(s.player_name);
  return out;
}

std::vector<HandRecord> records_of(std::span<const ParsedHand> corpus) {
  std::vector<HandRecord> out;
  out.reserve(corpus.size());
  for (const auto& h : corpus) out.push_back(h.record);
  return out;
}

std::vector<std::string> hand_ids_in_order(const std::vector<DatasetRecord>& recs) {
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const auto& r : recs)
    if (seen.insert(r.hand_id).second) ids.push_back(r.hand_id);
  return ids;
}

}  // namespace

nlohmann::json record_to_json(const DatasetRecord& r) {
  nlohmann::json j;
  j["prompt"] = r.prompt;
  j["response"] = r.response;
  j["label_action"] = std::string(action_kind_name(r.label.kind));
  j["label_class"] = std::string(action_class_name(r.label_class));
  j["label_amount"] = to_double(r.label_amount);
  nlohmann::json meta = {{"hand_id", r.hand_id},
                         {"street", std::string(street_name(r.street))},
                         {"hero", r.hero},
                         {"winrate_band", r.band}};
  j["meta"] = meta;
  if (r.score) {
    j["score"] = r.score->to_double();
    j["split"] = r.split;
  }
  return j;
}

Rational reward_score(const Rational& wr) {
  Rational s = wr / Rational(kRewardScale);
  if (s > Rational(1)) return Rational(1);
  if (s < Rational(-1)) return Rational(-1);
  return s;
}

std::set<std::string> split_hands(const std::vector<std::string>& hand_ids, std::uint64_t seed, double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0)) throw std::invalid_argument("split ratio must be in (0, 1]");
  std::vector<std::string> ids = hand_ids;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  Rng rng(seed);
  rng.shuffle(std::span<std::string>(ids));
  auto n_train = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(ids.size()) - 1e-9));
  return {ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(std::min(n_train, ids.size()))};
}

SftSplit emit_sft(std::span<const ParsedHand> corpus, const WinRateBand& band, std::uint64_t seed, int min_hands) {
  SftSplit out;
  std::vector<HandRecord> records = records_of(corpus);
  auto stats = compute_stats(records);
  std::vector<DatasetRecord> all;
  for (const auto& tagged : partition_hands(records, band, stats, min_hands)) {
    const HandRecord& r = records[tagged.index];
    for (const auto& hero : tagged.heroes) {
      ExtractResult ex = extract_decision_points(r, hero);
      for (auto& d : ex.diagnostics) out.diagnostics.push_back(std::move(d));
      for (const auto& dp : ex.points) {
        DatasetRecord rec = record_from(dp, build_prompt(dp));
        rec.band = band_text(band);
        all.push_back(std::move(rec));
      }
    }
  }
  if (all.empty()) throw EmptyDatasetError("no decision points for band " + band_text(band));
  auto train_ids = split_hands(hand_ids_in_order(all), seed);
  for (auto& rec : all) (train_ids.count(rec.hand_id) ? out.train : out.test).push_back(std::move(rec));
  return out;
}

std::vector<DatasetRecord> emit_raw_variant(std::span<const ParsedHand> corpus) {
  std::vector<DatasetRecord> out;
  for (const auto& h : corpus) {
    if (!has_revealed_showdown(h.record)) continue;
    std::string raw = raw_text_of(h);
    while (!raw.empty() && raw.back() == '\n') raw.pop_back();
    for (const auto& hero : revealed_players(h.record)) {
      for (const auto& dp : extract_decision_points(h.record, hero).points) {
        DatasetRecord rec = record_from(dp, raw);
        rec.band = "raw";
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::vector<DatasetRecord> emit_reward(std::span<const ParsedHand> corpus,
                                       const std::map<std::string, PlayerStats>& stats, std::uint64_t seed,
                                       int min_hands) {
  std::vector<DatasetRecord> out;
  for (const auto& h : corpus) {
    const HandRecord& r = h.record;
    if (!has_revealed_showdown(r)) continue;
    for (const auto& hero : revealed_players(r)) {
      auto it = stats.find(hero);
      if (it == stats.end() || it->second.hands_played < min_hands) continue;
      Rational score = reward_score(it->second.win_rate_mbb_h);
      for (const auto& dp : extract_decision_points(r, hero).points) {
        DatasetRecord rec = record_from(dp, build_prompt(dp));
        rec.score = score;
        rec.band = "reward";
        out.push_back(std::move(rec));
      }
    }
  }
  auto train_ids = split_hands(hand_ids_in_order(out), seed);
  for (auto& rec : out) rec.split = train_ids.count(rec.hand_id) ? "train" : "test";
  return out;
}

Dataset build_dataset(std::span<const ParsedHand> corpus, const DatasetOptions& options) {
  Dataset ds;
  std::vector<HandRecord> records = records_of(corpus);
  auto stats = compute_stats(records);
  WinRateBand band = WinRateBand::all("II");
  int min_hands = options.min_hands;
  if (options.variant == "I" || options.variant == "II") {
    min_hands = 0;
  } else if (options.variant == "custom") {
    if (!options.band) throw std::invalid_argument("custom variant needs a band");
    band = *options.band;
    if (band.label.empty()) band.label = "custom " + band.to_string();
  } else {
    band = WinRateBand::dataset(options.variant);
  }

  if (options.variant == "I") {
    auto all = emit_raw_variant(corpus);
    if (all.empty()) throw EmptyDatasetError("no showdown-revealed decision points");
    auto train_ids = split_hands(hand_ids_in_order(all), options.seed);
    for (auto& rec : all) (train_ids.count(rec.hand_id) ? ds.train : ds.test).push_back(std::move(rec));
  } else {
    SftSplit s = emit_sft(corpus, band, options.seed, min_hands);
    ds.train = std::move(s.train);
    ds.test = std::move(s.test);
    ds.diagnostics = std::move(s.diagnostics);
  }
  ds.reward = emit_reward(corpus, stats, options.seed, options.min_hands);

  auto ids = [](const std::vector<DatasetRecord>& v) { return hand_ids_in_order(v).size(); };
  ds.manifest = {
      {"schema", "dataset_manifest.v1"},
      {"variant", options.variant},
      {"band", band.to_string()},
      {"band_label", band.label},
      {"seed", options.seed},
      {"split_ratio", kTrainRatio},
      {"min_hands", min_hands},
      {"reward_scale_mbb_h", kRewardScale},
      {"prompt_template", PromptTemplate::standard().version()},
      {"counts",
       {{"sft_train", ds.train.size()},
        {"sft_test", ds.test.size()},
        {"reward", ds.reward.size()},
        {"hands_train", ids(ds.train)},
        {"hands_test", ids(ds.test)},
        {"corpus_hands", corpus.size()}}},
      {"files", {"sft_train.jsonl", "sft_test.jsonl", "reward.jsonl"}},
  };
  return ds;
}

void write_dataset(const std::filesystem::path& dir, const Dataset& ds) {
  std::filesystem::create_directories(dir);
  auto write_jsonl = [&](const std::string& name, const std::vector<DatasetRecord>& recs) {
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    for (const auto& r : recs) f << record_to_json(r).dump() << "\n";
  };
  write_jsonl("sft_train.jsonl", ds.train);
  write_jsonl("sft_test.jsonl", ds.test);
  write_jsonl("reward.jsonl", ds.reward);
  std::ofstream m(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!m) throw std::runtime_error("cannot write manifest");
  m << ds.manifest.dump(2) << "\n";
}

}  // namespace poker
