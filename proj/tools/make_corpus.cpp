// Writes the fixture corpus: a seed hand file followed by simulated
// six-handed hands among nine regulars, with rake, mucks and chat lines.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "poker/game_engine.hpp"
#include "poker/hand_history.hpp"
#include "poker/policies.hpp"
#include "poker/rng.hpp"

using namespace poker;

namespace {

struct Regular {
  std::string name;
  std::string style;
};

const std::vector<Regular> kRegulars = {
    {"Alder", "equity"}, {"Birch", "equity"}, {"Cedar", "tight"},  {"Dogwood", "call"}, {"Elm", "random"},
    {"Fir", "random"},   {"Ginkgo", "raise"}, {"Hazel", "fold"},   {"Juniper", "loose"},
};

std::unique_ptr<Policy> policy_for(const std::string& style, std::uint64_t seed) {
  EquityParams p;
  p.samples = 200;
  p.rng_seed = seed;
  if (style == "equity") return std::make_unique<EquityPolicy>(p);
  if (style == "tight") {
    p.call_threshold = 0.45;
    p.raise_threshold = 0.7;
    return std::make_unique<EquityPolicy>(p);
  }
  if (style == "loose") {
    p.call_threshold = 0.2;
    p.raise_threshold = 0.5;
    return std::make_unique<EquityPolicy>(p);
  }
  return make_policy(PolicySpec::parse(style), seed);
}

Money rake_for(const GameState& s) {
  if (s.board().empty()) return Money{};
  Money pot = s.pot_total();
  return std::min(Money::from_minor(pot.minor() * 5 / 100), Money::from_minor(15));
}

// Removes the reveal of one showdown loser.
void muck_loser(HandRecord& r, Rng& rng) {
  std::map<std::string, Money> won;
  for (const auto& c : r.collections) won[c.player] += c.amount;
  std::vector<std::string> losers;
  for (const auto& [name, cards] : r.hole_cards)
    if (!won.count(name)) losers.push_back(name);
  if (losers.empty()) return;
  std::string who = losers[rng.below(losers.size())];
  r.actions.erase(std::remove_if(r.actions.begin(), r.actions.end(),
                                 [&](const ActionEvent& a) { return a.actor == who && a.kind == ActionKind::Show; }),
                  r.actions.end());
  r.hole_cards.erase(who);
  r.shown_ranks.erase(who);
  r.mucked.push_back(who);
}

std::string with_chat(const std::string& text, const std::vector<std::string>& names, Rng& rng) {
  static const std::vector<std::string> lines = {"gl all", "nice hand", "ty", "wow", "unlucky"};
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  bool in_summary = false;
  while (std::getline(in, line)) {
    out << line << "\n";
    if (line.rfind("*** SUMMARY", 0) == 0) in_summary = true;
    if (!in_summary && line.find(": ") != std::string::npos && line.rfind("Seat ", 0) != 0 && rng.below(20) == 0)
      out << names[rng.below(names.size())] << " said, \"" << lines[rng.below(lines.size())] << "\"\n";
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixture corpus generator"};
  std::string seed_file;
  std::string out_dir;
  int hands = 199;
  int per_file = 50;
  std::uint64_t seed = 3;
  app.add_option("--seed-hands", seed_file, "Hand file copied verbatim at the start")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory")->required();
  app.add_option("--hands", hands, "Simulated hands")->check(CLI::PositiveNumber);
  app.add_option("--per-file", per_file, "Hands per output file")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Generator seed");
  CLI11_PARSE(app, argc, argv);

  std::vector<std::string> blocks;
  if (!seed_file.empty()) {
    std::ifstream f(seed_file);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && text.back() == '\n') text.pop_back();
    blocks.push_back(text + "\n");
  }

  Rng rng(seed);
  for (int h = 0; h < hands; ++h) {
    std::vector<int> idx(kRegulars.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    rng.shuffle(std::span<int>(idx));
    idx.resize(6);
    std::vector<int> seat_nos = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    rng.shuffle(std::span<int>(seat_nos));
    seat_nos.resize(6);
    std::sort(seat_nos.begin(), seat_nos.end());

    TableConfig config;
    std::map<std::string, std::unique_ptr<Policy>> policies;
    for (int k = 0; k < 6; ++k) {
      const Regular& reg = kRegulars[idx[k]];
      Money stack = Money::from_minor(100 + static_cast<std::int64_t>(rng.below(501)));
      config.seats.push_back({seat_nos[k], reg.name, stack});
      policies[reg.name] = policy_for(reg.style, rng.next());
    }
    config.blinds = {Money::from_minor(2), Money::from_minor(5)};
    config.dealer_seat = seat_nos[rng.below(6)];
    config.rng_seed = rng.next();

    GameState s = GameState::new_hand(config);
    while (!s.is_terminal()) {
      const PlayerState& p = s.player(*s.to_act());
      s.apply(policies.at(p.name)->decide(s));
    }
    HandRecord r = s.to_record(std::to_string(2300000000LL + h + 1), rake_for(s));
    r.table_name = "Fixture " + std::to_string(h % 4 + 1);
    r.max_seats = 9;
    if (r.hole_cards.size() >= 2 && rng.below(4) == 0) muck_loser(r, rng);

    std::vector<std::string> names;
    for (const auto& seat : r.seats) names.push_back(seat.player_name);
    blocks.push_back(with_chat(serialize_hand(r), names, rng));
  }

  std::filesystem::create_directories(out_dir);
  int files = 0;
  for (std::size_t i = 0; i < blocks.size(); i += static_cast<std::size_t>(per_file)) {
    std::ostringstream name;
    name << "hands_" << std::setw(2) << std::setfill('0') << ++files << ".txt";
    std::ofstream f(std::filesystem::path(out_dir) / name.str(), std::ios::binary | std::ios::trunc);
    for (std::size_t j = i; j < std::min(blocks.size(), i + static_cast<std::size_t>(per_file)); ++j)
      f << (j > i ? "\n\n" : "") << blocks[j];
  }
  std::cout << blocks.size() << " hands in " << files << " files\n";
  return 0;
}
