#include "poker/advisor_service.hpp"

#include <httplib.h>

#include <algorithm>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <random>
#include <regex>
#include <sstream>

#include "poker/amount_grid.hpp"
#include "poker/game_engine.hpp"
#include "poker/policies.hpp"
#include "poker/prompt_builder.hpp"
#include "poker/rng.hpp"

namespace poker {

using nlohmann::json;

struct Session {
  explicit Session(GameState initial) : state(std::move(initial)) {}

  mutable std::mutex mu;
  std::string id;
  json config;
  std::string hand_id;
  int hero_seat = 0;
  PolicySpec advisor;
  std::unique_ptr<Policy> local;  // equity advisor
  GameState state;
  std::map<int, VisibleCards> shown;
  std::vector<json> log;
  std::string constant_block;
  std::chrono::system_clock::time_point updated;
};

namespace {

std::string now_iso() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream o;
  o << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0') << ms << 'Z';
  return o.str();
}

ServiceError invalid(const std::string& message) { return ServiceError(400, "invalid_request", message); }

ServiceError illegal(const std::string& rule) {
  return ServiceError(409, "illegal_event", "event rejected: " + rule, rule);
}

Money money_field(const json& j, const char* key) {
  if (!j.contains(key)) throw invalid(std::string("missing field ") + key);
  const json& v = j.at(key);
  try {
    if (v.is_string()) return parse_money(v.get<std::string>());
    if (v.is_number()) return money_from_double(v.get<double>());
  } catch (const std::exception& e) {
    throw invalid(std::string("bad amount in ") + key + ": " + e.what());
  }
  throw invalid(std::string("field ") + key + " must be a number or string");
}

int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) throw invalid(std::string("missing integer field ") + key);
  return j.at(key).get<int>();
}

std::vector<Card> cards_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw invalid(std::string("missing card list ") + key);
  std::vector<Card> out;
  for (const auto& c : j.at(key)) {
    if (!c.is_string()) throw invalid(std::string("cards in ") + key + " must be strings");
    try {
      out.push_back(parse_card(c.get<std::string>()));
    } catch (const std::exception& e) {
      throw invalid(e.what());
    }
  }
  return out;
}

HoleCards hole_field(const json& j, const char* key) {
  auto cards = cards_field(j, key);
  if (cards.size() != 2) throw invalid(std::string(key) + " must hold two cards");
  if (cards[0] == cards[1]) throw invalid(std::string(key) + " holds the same card twice");
  return {cards[0], cards[1]};
}

std::string api_action_name(ActionKind k) {
  return k == ActionKind::AllIn ? "all-in" : std::string(action_kind_name(k));
}

std::optional<ActionKind> api_action_kind(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  if (name == "all-in" || name == "all_in" || name == "allin") return ActionKind::AllIn;
  for (ActionKind k : {ActionKind::Fold, ActionKind::Check, ActionKind::Call, ActionKind::Bet, ActionKind::Raise})
    if (name == action_kind_name(k)) return k;
  return std::nullopt;
}

// Observer phrasing: "raises 0.05 to 0.1", "bets 0.16", "calls", "all-in".
PolicyDecision parse_event_text(const std::string& text, const GameState& state) {
  static const std::regex raise_to(R"(^\s*raises?\s+\$?[0-9.]+\s+to\s+\$?([0-9.]+)\s*$)", std::regex::icase);
  std::smatch m;
  if (std::regex_match(text, m, raise_to)) return {ActionKind::Raise, parse_money(m[1].str())};
  PolicyDecision d;
  try {
    d = parse_action_text(text);
  } catch (const std::exception& e) {
    throw invalid(e.what());
  }
  if (d.kind == ActionKind::Bet) d.amount += state.player(*state.to_act()).street_contrib;
  return d;
}

json legal_json(const GameState& state) {
  LegalActionSet legal = state.legal_actions();
  json kinds = json::array();
  for (ActionKind k : legal.kinds) kinds.push_back(api_action_name(k));
  json menu = json::array();
  for (Money m : legal.menu) menu.push_back(to_double(m));
  return {{"actions", kinds},
          {"call_amount", to_double(legal.call_amount)},
          {"min_to", to_double(legal.min_to)},
          {"max_to", to_double(legal.max_to)},
          {"menu", menu}};
}

json cards_json(std::span<const Card> cards) {
  json a = json::array();
  for (Card c : cards) a.push_back(format_card(c));
  return a;
}

json snapshot(const Session& s) {
  const GameState& st = s.state;
  json players = json::array();
  for (const auto& p : st.players()) {
    json pj = {{"seat", p.seat_no},
               {"name", p.name},
               {"stack", to_double(p.stack)},
               {"street_contrib", to_double(p.street_contrib)},
               {"total_contrib", to_double(p.total_contrib)},
               {"folded", p.folded},
               {"all_in", p.all_in}};
    if (p.hole && (p.seat_no == s.hero_seat || s.shown.count(p.seat_no))) pj["cards"] = cards_json(*p.hole);
    players.push_back(pj);
  }
  const PlayerState& hero = st.player(st.index_of_seat(s.hero_seat));
  json hero_j = {{"seat", s.hero_seat},
                 {"cards", cards_json(*hero.hole)},
                 {"characteristics", hole_characteristics((*hero.hole)[0], (*hero.hole)[1]).names()},
                 {"rank", std::string(category_name(evaluate_best(*hero.hole, st.board()).category()))}};
  json j = {{"session_id", s.id},
            {"hand_id", s.hand_id},
            {"advisor", s.advisor.to_string()},
            {"street", std::string(street_name(st.street()))},
            {"board", cards_json(st.board())},
            {"pot", to_double(st.pot_total())},
            {"current_bet", to_double(st.current_bet())},
            {"terminal", st.is_terminal()},
            {"awaiting_board", st.awaiting_board()},
            {"cards_needed", st.cards_needed()},
            {"hero", hero_j},
            {"players", players},
            {"event_log", s.log}};
  if (st.to_act()) {
    j["to_act"] = st.player(*st.to_act()).seat_no;
    j["legal"] = legal_json(st);
  } else {
    j["to_act"] = nullptr;
  }
  if (st.outcome_known()) {
    json pay = json::object();
    for (const auto& [seat, amt] : st.resolve_showdown())
      if (amt > Money{}) pay[std::to_string(seat)] = to_double(amt);
    j["payouts"] = pay;
  }
  return j;
}

// Applies one event to copies of the mirrored state; throws on rejection.
void apply_event(Session& s, const json& ev) {
  if (!ev.is_object() || !ev.contains("type") || !ev.at("type").is_string())
    throw invalid("event needs a string field type");
  std::string type = ev.at("type").get<std::string>();
  GameState next = s.state;
  std::map<int, VisibleCards> shown = s.shown;
  try {
    if (type == "action") {
      if (next.is_terminal()) throw IllegalAction("the hand is over");
      if (next.awaiting_board()) throw IllegalAction("board cards must be dealt before further action");
      int seat = int_field(ev, "seat");
      if (next.index_of_seat(seat) < 0) throw IllegalAction("no player in seat " + std::to_string(seat));
      int actor = next.player(*next.to_act()).seat_no;
      if (seat != actor)
        throw IllegalAction("out of turn: seat " + std::to_string(actor) + " is to act, not seat " + std::to_string(seat));
      PolicyDecision d;
      if (ev.contains("text")) {
        if (!ev.at("text").is_string()) throw invalid("text must be a string");
        d = parse_event_text(ev.at("text").get<std::string>(), next);
      } else {
        if (!ev.contains("action") || !ev.at("action").is_string()) throw invalid("action event needs action or text");
        auto k = api_action_kind(ev.at("action").get<std::string>());
        if (!k) throw invalid("unknown action " + ev.at("action").get<std::string>());
        d.kind = *k;
        if (d.kind == ActionKind::Bet || d.kind == ActionKind::Raise) d.amount = money_field(ev, "amount");
      }
      if ((d.kind == ActionKind::Bet || d.kind == ActionKind::Raise) && ev.value("snap", false))
        d.amount = snap_amount(d.amount, next.legal_actions().menu);
      next.apply(d);
    } else if (type == "board") {
      auto cards = cards_field(ev, "cards");
      next.deal_board(cards);
    } else if (type == "show") {
      int seat = int_field(ev, "seat");
      HoleCards cards = hole_field(ev, "cards");
      if (seat == s.hero_seat) {
        const PlayerState& hero = next.player(next.index_of_seat(seat));
        if (*hero.hole != cards) throw IllegalAction("hero cards differ from the session config");
      }
      next.reveal_hole(seat, cards);
      if (seat != s.hero_seat) shown[seat] = {cards[0], cards[1]};
    } else {
      throw invalid("unknown event type " + type + " (action, board, show)");
    }
  } catch (const IllegalAction& e) {
    throw illegal(e.rule());
  }
  s.state = std::move(next);
  s.shown = std::move(shown);
}

DecisionPoint current_point(const Session& s) {
  return decision_point_from_state(s.state, s.hero_seat, s.hand_id, s.shown);
}

std::string rationale_for(double equity, int opponents, const EquityParams& p) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(3) << "equity " << equity << " against " << opponents
    << (opponents == 1 ? " opponent" : " opponents") << "; call above " << p.call_for(opponents) << ", raise above "
    << p.raise_for(opponents);
  return o.str();
}

}  // namespace

json ServiceError::to_json() const {
  json j = {{"code", code_}, {"message", what()}};
  if (violated_rule_) j["violated_rule"] = *violated_rule_;
  return j;
}

AdvisorService::AdvisorService(ServiceOptions options) : options_(std::move(options)) {
  PolicySpec::parse(options_.default_advisor);
  if (options_.store_dir) {
    std::filesystem::create_directories(*options_.store_dir);
    replay_store();
    prune();
  }
}

AdvisorService::~AdvisorService() = default;

std::string AdvisorService::new_id() {
  static thread_local std::mt19937_64 gen{std::random_device{}()};
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << gen();
  return o.str();
}

std::shared_ptr<Session> AdvisorService::open_session(const json& config, const std::string& id) {
  if (!config.is_object()) throw invalid("session config must be an object");
  if (!config.contains("players") || !config.at("players").is_array()) throw invalid("missing players list");
  if (!config.contains("blinds") || !config.at("blinds").is_object()) throw invalid("missing blinds");
  TableConfig table;
  for (const auto& p : config.at("players")) {
    SeatConfig sc;
    sc.seat_no = int_field(p, "seat");
    sc.name = p.value("name", "Seat " + std::to_string(sc.seat_no));
    sc.stack = money_field(p, "stack");
    table.seats.push_back(sc);
  }
  std::sort(table.seats.begin(), table.seats.end(), [](const auto& a, const auto& b) { return a.seat_no < b.seat_no; });
  const json& b = config.at("blinds");
  table.blinds.small_blind = money_field(b, "small");
  table.blinds.big_blind = money_field(b, "big");
  table.blinds.currency = b.value("currency", "USD");
  table.dealer_seat = config.contains("dealer_seat") ? int_field(config, "dealer_seat") : table.seats.empty() ? 0 : table.seats.back().seat_no;
  try {
    table.validate();
  } catch (const std::invalid_argument& e) {
    throw invalid(e.what());
  }
  int hero_seat = int_field(config, "hero_seat");
  if (std::none_of(table.seats.begin(), table.seats.end(), [&](const auto& sc) { return sc.seat_no == hero_seat; }))
    throw invalid("hero seat " + std::to_string(hero_seat) + " is not at the table");
  DealSpec deal;
  deal.holes[hero_seat] = hole_field(config, "hero_cards");
  auto s = std::make_shared<Session>(GameState::new_hand(table, deal));
  s->id = id;
  s->config = config;
  s->hero_seat = hero_seat;
  s->hand_id = config.value("hand_id", id);
  try {
    s->advisor = PolicySpec::parse(config.value("advisor", options_.default_advisor));
  } catch (const std::exception& e) {
    throw invalid(e.what());
  }
  if (s->advisor.kind != "equity" && s->advisor.kind != "remote")
    throw invalid("advisor must be equity or remote:<url>");
  if (s->advisor.kind == "equity")
    s->local = make_policy(s->advisor, derive_seed(options_.seed, std::hash<std::string>{}(id)), options_.timeout);
  s->constant_block = build_constant_block(current_point(*s));
  s->updated = std::chrono::system_clock::now();
  return s;
}

void AdvisorService::persist(const Session& s, const json& line) const {
  if (!options_.store_dir) return;
  std::ofstream f(*options_.store_dir / (s.id + ".jsonl"), std::ios::app | std::ios::binary);
  if (!f) throw ServiceError(500, "store_unavailable", "cannot append to the event store");
  f << line.dump() << "\n";
  f.flush();
}

void AdvisorService::replay_store() {
  for (const auto& entry : std::filesystem::directory_iterator(*options_.store_dir)) {
    if (entry.path().extension() != ".jsonl") continue;
    std::ifstream f(entry.path());
    std::string line;
    std::shared_ptr<Session> s;
    try {
      while (std::getline(f, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (j.at("type") == "create") {
          s = open_session(j.at("config"), entry.path().stem().string());
        } else if (s && j.at("type") == "event") {
          apply_event(*s, j.at("event"));
          s->log.push_back({{"seq", j.at("seq")}, {"ts", j.at("ts")}, {"event", j.at("event")}});
        }
      }
    } catch (const std::exception&) {
      // A torn final line keeps the events before it.
    }
    if (!s) continue;
    s->updated = std::chrono::file_clock::to_sys(std::filesystem::last_write_time(entry.path()));
    sessions_[s->id] = s;
    ++replayed_;
  }
}

int AdvisorService::prune() {
  if (options_.retention.count() <= 0) return 0;
  auto cutoff = std::chrono::system_clock::now() - options_.retention;
  std::unique_lock lock(mu_);
  int dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    bool stale;
    {
      std::lock_guard sl(it->second->mu);
      stale = it->second->updated < cutoff;
    }
    if (stale) {
      if (options_.store_dir) std::filesystem::remove(*options_.store_dir / (it->first + ".jsonl"));
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

json AdvisorService::create_session(const json& config) {
  if (options_.retention.count() > 0) prune();
  std::string id = new_id();
  auto s = open_session(config, id);
  {
    std::unique_lock lock(mu_);
    while (sessions_.count(id)) id = new_id();
    s->id = id;
    if (!config.contains("hand_id")) s->hand_id = id;
    sessions_[id] = s;
  }
  std::lock_guard sl(s->mu);
  persist(*s, {{"type", "create"}, {"ts", now_iso()}, {"config", config}});
  return {{"session_id", id}, {"constant_block", s->constant_block}, {"state", snapshot(*s)}};
}

std::shared_ptr<Session> AdvisorService::find(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "not_found", "unknown session " + id);
  return it->second;
}

json AdvisorService::post_event(const std::string& id, const json& event) {
  auto s = find(id);
  std::lock_guard sl(s->mu);
  apply_event(*s, event);
  json entry = {{"seq", static_cast<int>(s->log.size()) + 1}, {"ts", now_iso()}, {"event", event}};
  s->log.push_back(entry);
  s->updated = std::chrono::system_clock::now();
  persist(*s, {{"type", "event"}, {"seq", entry["seq"]}, {"ts", entry["ts"]}, {"event", event}});
  return snapshot(*s);
}

json AdvisorService::get_state(const std::string& id) const {
  auto s = find(id);
  std::lock_guard sl(s->mu);
  json j = snapshot(*s);
  j["constant_block"] = s->constant_block;
  return j;
}

std::string AdvisorService::get_prompt(const std::string& id, const std::string& directive) const {
  auto s = find(id);
  std::lock_guard sl(s->mu);
  return build_prompt(current_point(*s), directive);
}

json AdvisorService::get_advice(const std::string& id, const json& request) {
  if (!request.is_object() && !request.is_null()) throw invalid("advice request must be an object");
  std::string directive = request.is_object() ? request.value("directive", "") : "";
  std::string question = request.is_object() ? request.value("question", "") : "";
  auto s = find(id);
  std::lock_guard sl(s->mu);
  const GameState& st = s->state;
  std::string prompt = build_prompt(current_point(*s), directive);

  RemoteConfig remote;
  remote.endpoint = s->advisor.endpoint;
  remote.timeout = options_.timeout;
  remote.session_id = s->id;

  if (!question.empty()) {
    std::string forwarded = prompt + "\n" + question;
    if (s->advisor.kind != "remote")
      return {{"status", "unsupported"},
              {"message", "the local equity advisor answers action questions only"},
              {"prompt_used", forwarded}};
    RemoteReply r = remote_complete(remote, forwarded);
    if (!r.text)
      return {{"status", "unavailable"}, {"message", r.error}, {"prompt_used", forwarded}};
    return {{"status", "answered"}, {"answer", *r.text}, {"prompt_used", forwarded}};
  }

  if (st.is_terminal()) return {{"status", "no_advice"}, {"reason", "the hand is over"}, {"prompt_used", prompt}};
  if (st.awaiting_board())
    return {{"status", "no_advice"}, {"reason", "waiting for board cards"}, {"prompt_used", prompt}};
  int actor = st.player(*st.to_act()).seat_no;
  if (actor != s->hero_seat)
    return {{"status", "no_advice"},
            {"reason", "waiting on seat " + std::to_string(actor)},
            {"waiting_on", actor},
            {"prompt_used", prompt}};

  PolicyDecision d;
  bool fallback = false;
  std::string rationale;
  std::string status = "ok";
  if (s->advisor.kind == "remote") {
    RemotePolicy::Outcome o = RemotePolicy::query(remote, st, prompt);
    d = o.decision;
    fallback = o.fallback;
    rationale = fallback ? o.error : o.raw_text;
    if (fallback) status = "unavailable";
  } else {
    auto* eq = static_cast<EquityPolicy*>(s->local.get());
    d = eq->decide(st);
    int opponents = 0;
    for (const auto& p : st.players()) opponents += (!p.folded && p.seat_no != s->hero_seat) ? 1 : 0;
    EquityParams params;
    rationale = rationale_for(eq->last_equity(), opponents, params);
  }
  LegalActionSet legal = st.legal_actions();
  Money amount = d.amount;
  if (d.kind == ActionKind::AllIn) amount = legal.max_to;
  if (d.kind == ActionKind::Call) amount = legal.call_amount;
  json j = {{"status", status},
            {"action", api_action_name(d.kind)},
            {"amount", to_double(amount)},
            {"response_text", format_response(d)},
            {"prompt_used", prompt},
            {"rationale_text", rationale},
            {"fallback", fallback},
            {"legal", legal_json(st)}};
  if (fallback) j["fallback_label"] = "advisor unavailable; safe fallback suggestion";
  return j;
}

std::size_t AdvisorService::session_count() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

void install_routes(httplib::Server& server, AdvisorService& service) {
  auto send_error = [](httplib::Response& res, const ServiceError& e) {
    res.status = e.http_status();
    res.set_content(e.to_json().dump(), "application/json");
  };
  auto guarded = [send_error](auto fn) {
    return [fn, send_error](const httplib::Request& req, httplib::Response& res) {
      try {
        json out = fn(req);
        res.status = 200;
        res.set_content(out.dump(), "application/json");
      } catch (const ServiceError& e) {
        send_error(res, e);
      } catch (const json::exception& e) {
        send_error(res, ServiceError(400, "invalid_json", e.what()));
      } catch (const std::exception& e) {
        send_error(res, ServiceError(500, "internal", e.what()));
      }
    };
  };
  auto body = [](const httplib::Request& req) { return req.body.empty() ? json::object() : json::parse(req.body); };

  server.Post("/v1/sessions", guarded([&service, body](const httplib::Request& req) {
                json out = service.create_session(body(req));
                return out;
              }));
  server.Post(R"(/v1/sessions/([0-9A-Za-z_-]+)/events)", guarded([&service, body](const httplib::Request& req) {
                return service.post_event(req.matches[1], body(req));
              }));
  server.Post(R"(/v1/sessions/([0-9A-Za-z_-]+)/advice)", guarded([&service, body](const httplib::Request& req) {
                return service.get_advice(req.matches[1], body(req));
              }));
  server.Get(R"(/v1/sessions/([0-9A-Za-z_-]+)/prompt)", guarded([&service](const httplib::Request& req) {
               std::string directive = req.has_param("directive") ? req.get_param_value("directive") : "";
               return json{{"prompt", service.get_prompt(req.matches[1], directive)}};
             }));
  server.Get(R"(/v1/sessions/([0-9A-Za-z_-]+))", guarded([&service](const httplib::Request& req) {
               return service.get_state(req.matches[1]);
             }));
  server.Get("/v1/health", guarded([&service](const httplib::Request&) {
               return json{{"status", "ok"}, {"sessions", service.session_count()}};
             }));
}

}  // namespace poker
