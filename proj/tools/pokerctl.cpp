// pokerctl: parse, analyze, build-dataset, simulate, evaluate, serve.
#include <httplib.h>

#include <algorithm>
#include <csignal>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "poker/advisor_service.hpp"
#include "poker/dataset_emitter.hpp"
#include "poker/eval_metrics.hpp"
#include "poker/hand_history.hpp"
#include "poker/player_analytics.hpp"
#include "poker/policies.hpp"
#include "poker/sim_harness.hpp"

using namespace poker;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string quote(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t\"'$") == std::string::npos) return s;
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// "# pokerctl <sub> --flag value ..." with every default filled in.
void print_header(const std::string& sub, const std::vector<std::pair<std::string, std::string>>& flags) {
  std::cerr << "# pokerctl " << sub;
  for (const auto& [k, v] : flags) {
    if (v == "\x01") std::cerr << " " << k;
    else std::cerr << " " << k << " " << quote(v);
  }
  std::cerr << "\n";
}

std::string flag_on() { return "\x01"; }

std::vector<std::filesystem::path> input_files(const std::filesystem::path& p) {
  if (!std::filesystem::exists(p)) throw std::runtime_error("no such input " + p.string());
  if (!std::filesystem::is_directory(p)) return {p};
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(p))
    if (e.is_regular_file()) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

struct Corpus {
  std::vector<ParsedHand> hands;
  std::vector<Diagnostic> diagnostics;
};

Corpus load_corpus(const std::vector<std::string>& inputs) {
  Corpus c;
  for (const auto& in : inputs) {
    for (const auto& f : input_files(in)) {
      if (f.extension() == ".jsonl") {
        for (auto& h : read_hands_jsonl(f)) c.hands.push_back(std::move(h));
        continue;
      }
      ParsedFile pf = parse_path(f);
      for (auto& h : pf.hands) c.hands.push_back(std::move(h));
      for (auto& d : pf.diagnostics) c.diagnostics.push_back(std::move(d));
    }
  }
  return c;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

void write_json(const std::string& path, const json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << "\n";
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

// --- parse ------------------------------------------------------------------

struct ParseOpts {
  std::vector<std::string> inputs;
  std::string out;
};

int cmd_parse(const ParseOpts& o) {
  print_header("parse", {{"--out", o.out}, {"--input", join(o.inputs)}});
  Corpus c = load_corpus(o.inputs);
  write_hands_jsonl(o.out, c.hands);
  for (const auto& d : c.diagnostics) std::cerr << "diagnostic: " << d.to_string() << "\n";
  std::cout << c.hands.size() << " hands, " << c.diagnostics.size() << " diagnostics\n";
  return kExitOk;
}

// --- analyze ----------------------------------------------------------------

struct AnalyzeOpts {
  std::vector<std::string> inputs;
  int min_hands = kDefaultMinHands;
  std::string out;
  int bins = 20;
  double range = 50;
};

int cmd_analyze(const AnalyzeOpts& o) {
  print_header("analyze", {{"--input", join(o.inputs)},
                           {"--min-hands", std::to_string(o.min_hands)},
                           {"--bins", std::to_string(o.bins)},
                           {"--range", std::to_string(o.range)},
                           {"--out", o.out.empty() ? "-" : o.out}});
  Corpus c = load_corpus(o.inputs);
  std::vector<HandRecord> records;
  for (const auto& h : c.hands) records.push_back(h.record);
  auto stats = compute_stats(records);
  auto ranked = rank_players(stats, o.min_hands);
  json players = json::array();
  std::set<std::string> names;
  for (const auto& st : ranked) {
    names.insert(st.player_name);
    players.push_back({{"player", st.player_name},
                       {"hands", st.hands_played},
                       {"net_bb", st.net_bb.to_double()},
                       {"mbb_h", st.win_rate_mbb_h.to_double()},
                       {"stddev", st.stddev_mbb_h}});
  }
  std::vector<double> deltas;
  for (const auto& r : records)
    for (const auto& s : r.seats)
      if (names.count(s.player_name)) deltas.push_back(hand_delta_bb(r, s.player_name).to_double());
  auto edges = uniform_edges(-o.range, o.range, o.bins);
  json hist = json::array();
  for (const auto& b : revenue_histogram(deltas, edges)) hist.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
  json staged = json::object();
  for (const auto& [street, v] : staged_deltas(records, names)) {
    double sum = 0;
    for (double d : v) sum += d;
    staged[std::string(street_name(street))] = {{"hands", v.size()}, {"mean_bb", v.empty() ? 0.0 : sum / v.size()}};
  }
  json report = {{"hands", records.size()},
                 {"players_total", stats.size()},
                 {"min_hands", o.min_hands},
                 {"players", players},
                 {"revenue_histogram_bb", hist},
                 {"staged_mean_bb", staged}};
  for (const auto& st : ranked)
    std::cerr << st.player_name << "\t" << st.hands_played << " hands\t" << st.win_rate_mbb_h.to_double()
              << " mbb/h\n";
  write_json(o.out, report);
  return kExitOk;
}

// --- build-dataset ----------------------------------------------------------

struct DatasetOpts {
  std::vector<std::string> inputs;
  std::string out;
  std::string variant = "II";
  bool raw = false;
  std::optional<double> min_winrate;
  std::optional<double> max_winrate;
  int min_hands = kDefaultMinHands;
  std::optional<std::uint64_t> seed;
};

Rational rational_of(double x) {
  // mbb/h bounds with up to three decimals.
  return Rational(static_cast<std::int64_t>(std::llround(x * 1000)), 1000);
}

int cmd_build_dataset(DatasetOpts o) {
  if (o.raw && (o.min_winrate || o.max_winrate)) throw UsageError("--raw cannot be combined with win-rate bounds");
  if (o.raw) o.variant = "I";
  DatasetOptions d;
  d.variant = o.variant;
  d.min_hands = o.min_hands;
  d.seed = resolve_seed(o.seed);
  if (o.min_winrate || o.max_winrate) {
    if (o.variant != "II") throw UsageError("--variant cannot be combined with win-rate bounds");
    d.variant = "custom";
    WinRateBand b;
    if (o.min_winrate) b.lower = rational_of(*o.min_winrate);
    if (o.max_winrate) {
      b.upper = rational_of(*o.max_winrate);
      b.upper_inclusive = true;
    }
    if (b.lower && b.upper && !(*b.lower < *b.upper)) throw UsageError("--min-winrate must be below --max-winrate");
    d.band = b;
  }
  std::vector<std::pair<std::string, std::string>> flags = {{"--input", join(o.inputs)},
                                                            {"--out", o.out},
                                                            {"--variant", d.variant == "custom" ? "II" : d.variant}};
  if (o.min_winrate) flags.push_back({"--min-winrate", std::to_string(*o.min_winrate)});
  if (o.max_winrate) flags.push_back({"--max-winrate", std::to_string(*o.max_winrate)});
  flags.push_back({"--min-hands", std::to_string(d.min_hands)});
  flags.push_back({"--seed", std::to_string(d.seed)});
  print_header("build-dataset", flags);

  Corpus c = load_corpus(o.inputs);
  Dataset ds = build_dataset(c.hands, d);
  write_dataset(o.out, ds);
  for (const auto& diag : ds.diagnostics) std::cerr << "diagnostic: " << diag.to_string() << "\n";
  std::cout << ds.manifest.dump(2) << "\n";
  return kExitOk;
}

// --- simulate ---------------------------------------------------------------

struct SimulateOpts {
  int players = 2;
  int hands = 1000;
  std::string policy = "equity";
  std::string policy_all = "random";
  std::vector<std::string> seat_policies;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool no_rotation = false;
  std::string small_blind = "0.01";
  std::string big_blind = "0.02";
  std::string stack = "2";
  double error_budget = 0.01;
  int timeout_ms = 10000;
  std::string out;
  std::string transcript;
  std::string sweep;
  bool no_timing = false;
};

PolicySpec parse_policy(const std::string& text) {
  try {
    return PolicySpec::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_simulate(const SimulateOpts& o) {
  std::uint64_t seed = resolve_seed(o.seed);
  MatchSpec spec;
  spec.hands = o.hands;
  spec.base_seed = seed;
  spec.jobs = o.jobs;
  spec.rotation = !o.no_rotation;
  spec.blinds = {parse_money(o.small_blind), parse_money(o.big_blind)};
  spec.starting_stack = parse_money(o.stack);
  spec.error_budget = o.error_budget;
  spec.remote_timeout = std::chrono::milliseconds(o.timeout_ms);
  spec.keep_records = !o.transcript.empty();
  if (!o.seat_policies.empty()) {
    if (static_cast<int>(o.seat_policies.size()) != o.players)
      throw UsageError("--seat-policy given " + std::to_string(o.seat_policies.size()) + " times for " +
                       std::to_string(o.players) + " players");
    for (const auto& s : o.seat_policies) spec.seat_policies.push_back(parse_policy(s));
  } else {
    spec.seat_policies.push_back(parse_policy(o.policy));
    for (int k = 1; k < o.players; ++k) spec.seat_policies.push_back(parse_policy(o.policy_all));
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::vector<std::pair<std::string, std::string>> flags = {{"--players", std::to_string(o.players)},
                                                            {"--hands", std::to_string(o.hands)}};
  if (o.seat_policies.empty()) {
    flags.push_back({"--policy", spec.seat_policies[0].to_string()});
    flags.push_back({"--policy-all", parse_policy(o.policy_all).to_string()});
  } else {
    for (const auto& p : spec.seat_policies) flags.push_back({"--seat-policy", p.to_string()});
  }
  flags.push_back({"--seed", std::to_string(seed)});
  flags.push_back({"--jobs", std::to_string(o.jobs)});
  if (o.no_rotation) flags.push_back({"--no-rotation", flag_on()});
  flags.push_back({"--small-blind", format_money(spec.blinds.small_blind)});
  flags.push_back({"--big-blind", format_money(spec.blinds.big_blind)});
  flags.push_back({"--stack", format_money(spec.starting_stack)});
  flags.push_back({"--error-budget", std::to_string(o.error_budget)});
  flags.push_back({"--timeout-ms", std::to_string(o.timeout_ms)});
  if (!o.sweep.empty()) flags.push_back({"--sweep", o.sweep});
  if (o.no_timing) flags.push_back({"--no-timing", flag_on()});
  flags.push_back({"--out", o.out.empty() ? "-" : o.out});
  if (!o.transcript.empty()) flags.push_back({"--transcript", o.transcript});
  print_header("simulate", flags);

  if (!o.sweep.empty()) {
    auto dash = o.sweep.find('-');
    if (dash == std::string::npos) throw UsageError("--sweep expects MIN-MAX");
    int lo = 0, hi = 0;
    try {
      lo = std::stoi(o.sweep.substr(0, dash));
      hi = std::stoi(o.sweep.substr(dash + 1));
    } catch (const std::exception&) {
      throw UsageError("--sweep expects MIN-MAX");
    }
    if (lo < kMinPlayers || hi > kMaxPlayers || lo > hi) throw UsageError("--sweep range must lie within 2-15");
    auto rows = player_sweep(spec.seat_policies[0], parse_policy(o.policy_all), lo, hi, o.hands, seed, o.jobs);
    json table = json::array();
    for (const auto& r : rows) {
      json row = {{"players", r.players},
                  {"hero_mbb_h", r.hero.mbb_h.to_double()},
                  {"hero_stddev", r.hero.stddev},
                  {"field_mbb_h", r.field_mbb_h.to_double()},
                  {"hero_decisions", r.hero.decisions}};
      if (!o.no_timing) row["hero_mean_response_s"] = r.hero.mean_response_s();
      table.push_back(row);
    }
    write_json(o.out, {{"sweep", table}, {"hero", spec.seat_policies[0].to_string()},
                       {"field", parse_policy(o.policy_all).to_string()}, {"hands", o.hands}, {"seed", seed}});
    return kExitOk;
  }

  MatchResult r = run_match(spec);
  write_json(o.out, match_report(spec, r, !o.no_timing));
  if (!o.transcript.empty()) {
    std::ofstream f(o.transcript, std::ios::binary | std::ios::trunc);
    f << transcript_text(r);
  }
  if (r.aborted) {
    std::cerr << "error: remote error budget exhausted after " << r.hands_played << " hands; stats are partial\n";
    return kExitFatal;
  }
  return kExitOk;
}

// --- evaluate ---------------------------------------------------------------

struct EvaluateOpts {
  std::string predictions;
  std::string truth;
  std::string big_blind = "0.05";
  std::string token_probs;
  std::vector<std::string> hands;
  std::string player;
  std::string out;
};

struct Labeled {
  ActionClass cls;
  Money amount;
};

ActionClass class_of_kind(ActionKind k) {
  switch (k) {
    case ActionKind::Check: return ActionClass::Check;
    case ActionKind::Call: return ActionClass::Call;
    case ActionKind::Fold: return ActionClass::Fold;
    case ActionKind::Bet: return ActionClass::Bet;
    default: return ActionClass::Raise;
  }
}

Money amount_of(const json& v) {
  return v.is_string() ? parse_money(v.get<std::string>()) : money_from_double(v.get<double>());
}

// {"action","amount"}, dataset records {"label_class","label_amount"}, or {"response"}.
Labeled labeled_from(const json& j, const std::string& where) {
  if (j.contains("label_class")) {
    auto c = action_class_from_name(j.at("label_class").get<std::string>());
    if (!c) throw std::runtime_error(where + ": unknown class");
    return {*c, j.contains("label_amount") ? amount_of(j.at("label_amount")) : Money{}};
  }
  if (j.contains("action")) {
    std::string a = j.at("action").get<std::string>();
    std::optional<ActionClass> c = action_class_from_name(a);
    if (!c && (a == "all-in" || a == "all_in")) c = ActionClass::Raise;
    if (!c) throw std::runtime_error(where + ": unknown action " + a);
    return {*c, j.contains("amount") ? amount_of(j.at("amount")) : Money{}};
  }
  if (j.contains("response")) {
    PolicyDecision d = parse_action_text(j.at("response").get<std::string>());
    return {class_of_kind(d.kind), d.amount};
  }
  throw std::runtime_error(where + ": needs action, label_class or response");
}

std::vector<Labeled> read_labels(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::vector<Labeled> out;
  std::string line;
  int n = 0;
  while (std::getline(f, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(labeled_from(json::parse(line), path + ":" + std::to_string(n)));
  }
  return out;
}

int cmd_evaluate(const EvaluateOpts& o) {
  bool pair = !o.predictions.empty() || !o.truth.empty();
  if (pair && (o.predictions.empty() || o.truth.empty())) throw UsageError("--predictions and --truth go together");
  if (!o.hands.empty() && o.player.empty()) throw UsageError("--hands needs --player");
  if (!pair && o.hands.empty() && o.token_probs.empty()) throw UsageError("nothing to evaluate");
  Money bb = parse_money(o.big_blind);
  std::vector<std::pair<std::string, std::string>> flags;
  if (pair) {
    flags.push_back({"--predictions", o.predictions});
    flags.push_back({"--truth", o.truth});
  }
  flags.push_back({"--big-blind", format_money(bb)});
  if (!o.token_probs.empty()) flags.push_back({"--token-probs", o.token_probs});
  if (!o.hands.empty()) {
    flags.push_back({"--hands", join(o.hands)});
    flags.push_back({"--player", o.player});
  }
  flags.push_back({"--out", o.out.empty() ? "-" : o.out});
  print_header("evaluate", flags);

  json report;
  if (pair) {
    auto pred = read_labels(o.predictions);
    auto truth = read_labels(o.truth);
    if (pred.size() != truth.size())
      throw UsageError("predictions have " + std::to_string(pred.size()) + " rows, truth has " +
                       std::to_string(truth.size()));
    if (pred.empty()) throw UsageError("no rows to evaluate");
    std::vector<ActionClass> pc, tc;
    std::vector<Money> pa, ta;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      pc.push_back(pred[i].cls);
      tc.push_back(truth[i].cls);
      pa.push_back(pred[i].amount);
      ta.push_back(truth[i].amount);
    }
    auto f1 = per_class_f1(pc, tc);
    json per_class = json::object();
    for (int c = 0; c < kNumActionClasses; ++c)
      per_class[std::string(action_class_name(static_cast<ActionClass>(c)))] = f1[c];
    auto cm = confusion_matrix(pc, tc);
    json matrix = json::array();
    for (const auto& row : cm) matrix.push_back(row);
    json classes = json::array();
    for (int c = 0; c < kNumActionClasses; ++c) classes.push_back(std::string(action_class_name(static_cast<ActionClass>(c))));
    report["samples"] = pred.size();
    report["macro_f1"] = macro_f1(pc, tc);
    report["per_class_f1"] = per_class;
    report["confusion_matrix"] = {{"classes", classes}, {"rows", "truth"}, {"matrix", matrix}};
    ValueMse v = value_amount_mse_bb(pc, pa, tc, ta, bb);
    report["amount_mse_bb"] = v.mse ? json(v.mse->to_double()) : json(nullptr);
    report["amount_pairs"] = v.pairs;
  }
  if (!o.token_probs.empty()) {
    std::ifstream f(o.token_probs);
    if (!f) throw std::runtime_error("cannot read " + o.token_probs);
    std::vector<double> probs;
    double p;
    while (f >> p) probs.push_back(p);
    report["perplexity"] = perplexity(probs);
  }
  if (!o.hands.empty()) {
    Corpus c = load_corpus(o.hands);
    std::vector<GameTranscript> games;
    std::vector<Rational> deltas;
    for (const auto& h : c.hands) {
      if (!h.record.seat_of(o.player)) continue;
      games.push_back(transcript_for(h.record, o.player));
      deltas.push_back(hand_delta_bb(h.record, o.player));
    }
    if (games.empty()) throw std::runtime_error("player " + o.player + " is in no hand");
    json scores = json::object();
    for (const auto& [cls, v] : action_scores(games)) scores[std::string(action_class_name(cls))] = v;
    MbbResult m = mbb_per_hand(deltas);
    report["games"] = {{"player", o.player},
                       {"hands", games.size()},
                       {"action_scores", scores},
                       {"avg_investment_bb", average_investment(games).to_double()},
                       {"mbb_h", m.mean.to_double()},
                       {"stddev", m.stddev}};
  }
  write_json(o.out, report);
  return kExitOk;
}

// --- serve ------------------------------------------------------------------

struct ServeOpts {
  std::string listen = "127.0.0.1:8080";
  std::string advisor = "equity";
  int timeout_ms = 10000;
  std::string store;
  int retention_hours = 0;
  std::string ui_dir;
  std::string port_file;
  std::optional<std::uint64_t> seed;
};

httplib::Server* g_server = nullptr;

int cmd_serve(const ServeOpts& o) {
  auto colon = o.listen.rfind(':');
  if (colon == std::string::npos) throw UsageError("--listen expects HOST:PORT");
  std::string host = o.listen.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(o.listen.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("--listen expects HOST:PORT");
  }
  PolicySpec advisor = parse_policy(o.advisor);
  if (advisor.kind != "equity" && advisor.kind != "remote") throw UsageError("--advisor must be equity or remote:URL");
  std::uint64_t seed = resolve_seed(o.seed);
  std::vector<std::pair<std::string, std::string>> flags = {{"--listen", o.listen},
                                                            {"--advisor", advisor.to_string()},
                                                            {"--timeout-ms", std::to_string(o.timeout_ms)},
                                                            {"--retention-hours", std::to_string(o.retention_hours)},
                                                            {"--seed", std::to_string(seed)}};
  if (!o.store.empty()) flags.push_back({"--store", o.store});
  if (!o.ui_dir.empty()) flags.push_back({"--ui-dir", o.ui_dir});
  if (!o.port_file.empty()) flags.push_back({"--port-file", o.port_file});
  print_header("serve", flags);

  ServiceOptions so;
  if (!o.store.empty()) so.store_dir = o.store;
  so.retention = std::chrono::hours(o.retention_hours);
  so.default_advisor = advisor.to_string();
  so.timeout = std::chrono::milliseconds(o.timeout_ms);
  so.seed = seed;
  AdvisorService service(so);
  httplib::Server server;
  install_routes(server, service);
  if (!o.ui_dir.empty() && !server.set_mount_point("/", o.ui_dir)) throw UsageError("--ui-dir is not a directory");
  int bound = port;
  if (port == 0) bound = server.bind_to_any_port(host);
  else if (!server.bind_to_port(host, port)) bound = -1;
  if (bound < 0) throw std::runtime_error("cannot listen on " + o.listen);
  if (!o.port_file.empty()) std::ofstream(o.port_file) << bound << "\n";
  std::cerr << "listening on " << host << ":" << bound << " (" << service.replayed_sessions()
            << " sessions replayed)\n";
  g_server = &server;
  std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
  std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
  server.listen_after_bind();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pokerctl: hand histories, datasets, simulation, evaluation and the advisor service"};
  app.require_subcommand(1);
  int default_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  ParseOpts po;
  auto* parse = app.add_subcommand("parse", "Parse hand-history files into hands.jsonl");
  parse->add_option("inputs", po.inputs, "Hand-history files or directories")->required();
  parse->add_option("--out,-o", po.out, "Output JSONL")->required();

  AnalyzeOpts ao;
  auto* analyze = app.add_subcommand("analyze", "Per-player win rates and revenue distribution");
  analyze->add_option("inputs", ao.inputs, "hands.jsonl or hand-history paths")->required();
  analyze->add_option("--min-hands", ao.min_hands, "Minimum hands for ranking")->check(CLI::NonNegativeNumber);
  analyze->add_option("--bins", ao.bins, "Histogram bins")->check(CLI::Range(1, 1000));
  analyze->add_option("--range", ao.range, "Histogram half-width in bb")->check(CLI::PositiveNumber);
  analyze->add_option("--out,-o", ao.out, "Report JSON (stdout when omitted)");

  DatasetOpts dopt;
  auto* dataset = app.add_subcommand("build-dataset", "Emit SFT and reward JSONL files");
  dataset->add_option("inputs", dopt.inputs, "hands.jsonl or hand-history paths")->required();
  dataset->add_option("--out,-o", dopt.out, "Output directory")->required();
  dataset->add_option("--variant", dopt.variant, "I, II, III, IV, V or VI")
      ->check(CLI::IsMember({"I", "II", "III", "IV", "V", "VI"}));
  dataset->add_flag("--raw", dopt.raw, "Raw hand text prompts (variant I)");
  dataset->add_option("--min-winrate", dopt.min_winrate, "Heroes above this mbb/h (exclusive)");
  dataset->add_option("--max-winrate", dopt.max_winrate, "Heroes at or below this mbb/h");
  dataset->add_option("--min-hands", dopt.min_hands, "Minimum hands for a banded hero")->check(CLI::NonNegativeNumber);
  dataset->add_option("--seed", dopt.seed, "Split seed");

  SimulateOpts so;
  auto* sim = app.add_subcommand("simulate", "Policy-vs-policy matches");
  sim->add_option("--players", so.players, "Seats, 2-15")->check(CLI::Range(kMinPlayers, kMaxPlayers));
  sim->add_option("--hands", so.hands, "Hands to play")->check(CLI::PositiveNumber);
  sim->add_option("--policy", so.policy, "Policy in seat 1: equity[:N], random, call, fold, raise, remote:URL");
  sim->add_option("--policy-all", so.policy_all, "Policy in every other seat");
  sim->add_option("--seat-policy", so.seat_policies, "Per-seat policy, once per seat");
  sim->add_option("--seed", so.seed, "Base seed");
  sim->add_option("--jobs", so.jobs, "Worker threads")->check(CLI::PositiveNumber)->default_val(default_jobs);
  sim->add_flag("--no-rotation", so.no_rotation, "Keep policies in fixed seats");
  sim->add_option("--small-blind", so.small_blind, "Small blind");
  sim->add_option("--big-blind", so.big_blind, "Big blind");
  sim->add_option("--stack", so.stack, "Starting stack, restored every hand");
  sim->add_option("--error-budget", so.error_budget, "Fraction of hands allowed a remote fallback")
      ->check(CLI::Range(0.0, 1.0));
  sim->add_option("--timeout-ms", so.timeout_ms, "Remote decision timeout")->check(CLI::PositiveNumber);
  sim->add_option("--out,-o", so.out, "Report JSON (stdout when omitted)");
  sim->add_option("--transcript", so.transcript, "Hand-history dump of every hand");
  sim->add_option("--sweep", so.sweep, "Player-count sweep MIN-MAX (hero vs --policy-all field)");
  sim->add_flag("--no-timing", so.no_timing, "Leave wall-clock fields out of the report");

  EvaluateOpts eo;
  auto* eval = app.add_subcommand("evaluate", "Action F1, amount MSE, perplexity and game metrics");
  eval->add_option("--predictions", eo.predictions, "Predicted actions JSONL")->check(CLI::ExistingFile);
  eval->add_option("--truth", eo.truth, "Ground-truth actions JSONL")->check(CLI::ExistingFile);
  eval->add_option("--big-blind", eo.big_blind, "Big blind for amount MSE");
  eval->add_option("--token-probs", eo.token_probs, "Token probabilities, whitespace separated")
      ->check(CLI::ExistingFile);
  eval->add_option("--hands", eo.hands, "Hands for game metrics");
  eval->add_option("--player", eo.player, "Player evaluated in --hands");
  eval->add_option("--out,-o", eo.out, "Report JSON (stdout when omitted)");

  ServeOpts sv;
  auto* serve = app.add_subcommand("serve", "Run the advisor HTTP service");
  serve->add_option("--listen", sv.listen, "HOST:PORT, port 0 picks a free port")->envname("POKER_LISTEN");
  serve->add_option("--advisor", sv.advisor, "equity[:N] or remote:URL")->envname("POKER_ADVISOR");
  serve->add_option("--timeout-ms", sv.timeout_ms, "Advisor timeout")->check(CLI::PositiveNumber)->envname("POKER_TIMEOUT_MS");
  serve->add_option("--store", sv.store, "Event store directory")->envname("POKER_STORE");
  serve->add_option("--retention-hours", sv.retention_hours, "Drop idle sessions after this long, 0 keeps all")
      ->check(CLI::NonNegativeNumber);
  serve->add_option("--ui-dir", sv.ui_dir, "Static UI bundle served at /");
  serve->add_option("--port-file", sv.port_file, "Write the bound port here");
  serve->add_option("--seed", sv.seed, "Advisor seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*parse) return cmd_parse(po);
    if (*analyze) return cmd_analyze(ao);
    if (*dataset) return cmd_build_dataset(dopt);
    if (*sim) return cmd_simulate(so);
    if (*eval) return cmd_evaluate(eo);
    if (*serve) return cmd_serve(sv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitUsage;
}
