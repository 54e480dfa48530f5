#include "poker/prompt_builder.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "poker/amount_grid.hpp"

namespace poker {

namespace {

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string single_quoted(std::string_view s) { return "'" + std::string(s) + "'"; }
std::string double_quoted(std::string_view s) { return "\"" + std::string(s) + "\""; }

std::string card_token(const std::optional<Card>& c) {
  return single_quoted(c ? format_card(*c) : std::string(kHiddenCard));
}

std::string_view prompt_action_name(ActionKind k) {
  switch (k) {
    case ActionKind::AllIn: return "all-in";
    default: return action_kind_name(k);
  }
}

}  // namespace

PromptTemplate PromptTemplate::parse(std::string_view text) {
  PromptTemplate t;
  std::istringstream in{std::string(text)};
  std::string line;
  std::string current;
  bool in_section = false;
  std::vector<std::string> body;
  auto flush = [&] {
    if (!in_section) return;
    while (!body.empty() && body.back().empty()) body.pop_back();
    t.sections_[current] = join(body, "\n");
    body.clear();
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("#!", 0) == 0) {
      t.version_ = line.substr(2);
      t.version_.erase(0, t.version_.find_first_not_of(' '));
      continue;
    }
    if (!line.empty() && line[0] == '#') continue;
    if (line.size() > 2 && line.front() == '[' && line.back() == ']' &&
        line.find_first_not_of("abcdefghijklmnopqrstuvwxyz_", 1) == line.size() - 1) {
      flush();
      current = line.substr(1, line.size() - 2);
      in_section = true;
      continue;
    }
    if (!in_section) {
      if (line.empty()) continue;
      throw PromptTemplateError("template text outside a section: " + line);
    }
    body.push_back(line);
  }
  flush();
  for (const char* required : {"constant", "dynamic", "opponent", "question", "waiting", "terminal", "winner"}) {
    if (!t.has_section(required)) throw PromptTemplateError(std::string("template lacks section [") + required + "]");
  }
  return t;
}

PromptTemplate PromptTemplate::from_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw PromptTemplateError("cannot read template " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

const PromptTemplate& PromptTemplate::standard() {
  static const PromptTemplate t = parse(prompt_asset_text());
  return t;
}

bool PromptTemplate::has_section(std::string_view name) const { return sections_.find(name) != sections_.end(); }

std::string PromptTemplate::render(std::string_view section, const std::map<std::string, std::string>& values) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) throw PromptTemplateError("unknown template section " + std::string(section));
  const std::string& src = it->second;
  std::string out;
  for (std::size_t i = 0; i < src.size(); ++i) {
    char c = src[i];
    if (c == '{') {
      if (i + 1 < src.size() && src[i + 1] == '{') {
        out += '{';
        ++i;
        continue;
      }
      auto close = src.find('}', i);
      if (close == std::string::npos) throw PromptTemplateError("unterminated placeholder in [" + it->first + "]");
      std::string key = src.substr(i + 1, close - i - 1);
      auto v = values.find(key);
      if (v == values.end()) throw PromptTemplateError("no value for {" + key + "} in [" + it->first + "]");
      out += v->second;
      i = close;
    } else if (c == '}') {
      if (i + 1 < src.size() && src[i + 1] == '}') ++i;
      out += '}';
    } else {
      out += c;
    }
  }
  return out;
}

std::string action_text(const ActionEvent& ev) {
  switch (ev.kind) {
    case ActionKind::Fold: return "fold";
    case ActionKind::Check: return "check";
    case ActionKind::Call: return "call";
    case ActionKind::Bet: return "bets " + format_money(ev.amount);
    case ActionKind::Raise:
      return "raises " + format_money(ev.amount) + " to " + format_money(ev.raise_to.value_or(ev.amount));
    case ActionKind::AllIn: return "all-in " + format_money(ev.amount);
    case ActionKind::PostBlind: return "posts " + format_money(ev.amount);
    case ActionKind::Show: return "shows";
  }
  return {};
}

std::string build_constant_block(const DecisionPoint& dp, const PromptTemplate& t) {
  std::vector<std::string> order, chars;
  for (int s : dp.order) order.push_back(single_quoted(std::to_string(s)));
  for (const auto& n : dp.characteristics.names()) chars.push_back(double_quoted(n));
  return t.render("constant", {
                                  {"player_amount", std::to_string(dp.player_amount)},
                                  {"currency", dp.blinds.currency},
                                  {"small_blind", format_money(dp.blinds.small_blind)},
                                  {"big_blind", format_money(dp.blinds.big_blind)},
                                  {"order", join(order, ", ")},
                                  {"small_blind_seat", std::to_string(dp.small_blind_seat)},
                                  {"hero_cards", single_quoted(format_card(dp.hole[0])) + ", " +
                                                     single_quoted(format_card(dp.hole[1]))},
                                  {"characteristics", join(chars, ", ")},
                                  {"hero_seat", std::to_string(dp.hero_seat)},
                              });
}

std::string build_dynamic_block(const DecisionPoint& dp, const PromptTemplate& t) {
  auto actions_of = [&](int seat) {
    std::vector<std::string> items;
    if (auto it = dp.action_history.find(seat); it != dp.action_history.end())
      for (const auto& a : it->second) items.push_back(double_quoted(a));
    return join(items, ", ");
  };
  auto money_of = [&](int seat) {
    auto it = dp.stacks.find(seat);
    return format_money(it == dp.stacks.end() ? Money{} : it->second);
  };

  std::vector<std::string> board;
  for (const auto& c : dp.board_visible) board.push_back(card_token(c));

  std::vector<std::string> rows;
  for (int seat : dp.order) {
    if (seat == dp.hero_seat) continue;
    VisibleCards cards{};
    if (auto it = dp.shown_cards.find(seat); it != dp.shown_cards.end()) cards = it->second;
    auto d = dp.discard_flags.find(seat);
    bool discarded = d != dp.discard_flags.end() && d->second;
    rows.push_back(t.render("opponent", {
                                            {"seat", std::to_string(seat)},
                                            {"cards", card_token(cards[0]) + ", " + card_token(cards[1])},
                                            {"money", money_of(seat)},
                                            {"actions", actions_of(seat)},
                                            {"discard", discarded ? "True" : "False"},
                                        }));
  }

  std::string tail;
  if (dp.terminal) {
    tail = t.render("terminal", {});
    for (const auto& [seat, amount] : dp.winners) {
      std::string with_rank = dp.winning_rank ? " with " + double_quoted(category_name(*dp.winning_rank)) : "";
      tail += "\n" + t.render("winner", {{"seat", std::to_string(seat)},
                                         {"amount", "$" + format_money(amount)},
                                         {"with_rank", with_rank}});
    }
  } else if (dp.waiting_on) {
    tail = t.render("waiting", {{"seat", std::to_string(*dp.waiting_on)}});
  } else {
    std::vector<std::string> legal, menu;
    for (ActionKind k : dp.legal_actions) legal.push_back(double_quoted(prompt_action_name(k)));
    for (Money m : dp.amount_menu) menu.push_back(format_money(m));
    tail = t.render("question", {{"legal_actions", join(legal, ", ")}, {"menu", join(menu, ", ")}});
  }

  return t.render("dynamic", {
                                 {"stage", std::string(street_name(dp.street))},
                                 {"public_cards", join(board, " ")},
                                 {"rank", std::string(category_name(dp.rank))},
                                 {"hero_money", money_of(dp.hero_seat)},
                                 {"hero_actions", actions_of(dp.hero_seat)},
                                 {"opponents", join(rows, "\n")},
                                 {"pot", format_money(dp.pot)},
                                 {"prompt_tail", tail},
                             });
}

std::string build_prompt(const DecisionPoint& dp, std::string_view directive, const PromptTemplate& t) {
  std::string out = build_constant_block(dp, t) + "\n" + build_dynamic_block(dp, t);
  if (!directive.empty()) {
    out += "\n";
    out += directive;
  }
  return out;
}

DecisionPoint decision_point_from_state(const GameState& state, int hero_seat, const std::string& hand_id,
                                        const std::map<int, VisibleCards>& shown) {
  int hi = state.index_of_seat(hero_seat);
  if (hi < 0) throw std::invalid_argument("hero seat " + std::to_string(hero_seat) + " is empty");
  const PlayerState& hero = state.player(hi);
  if (!hero.hole) throw std::invalid_argument("hero's hole cards are unknown");

  DecisionPoint dp;
  dp.hand_id = hand_id;
  dp.street = state.street();
  dp.hero = hero.name;
  dp.hero_seat = hero_seat;
  dp.hole = *hero.hole;
  dp.characteristics = hole_characteristics(dp.hole[0], dp.hole[1]);
  dp.rank = evaluate_best(dp.hole, state.board()).category();
  for (std::size_t i = 0; i < state.board().size() && i < 5; ++i) dp.board_visible[i] = state.board()[i];

  dp.player_amount = state.num_players();
  dp.blinds = state.config().blinds;
  dp.small_blind_seat = state.player(state.small_blind_index()).seat_no;
  std::map<std::string, int> seat_of;
  for (const auto& p : state.players()) {
    dp.order.push_back(p.seat_no);
    dp.stacks[p.seat_no] = p.stack + p.street_contrib;
    dp.discard_flags[p.seat_no] = p.folded;
    dp.action_history[p.seat_no];
    seat_of[p.name] = p.seat_no;
  }
  for (const auto& [seat, cards] : shown) {
    if (seat != hero_seat) dp.shown_cards[seat] = cards;
  }
  for (const auto& ev : state.history()) {
    if (ev.kind == ActionKind::PostBlind || ev.kind == ActionKind::Show) continue;
    dp.action_history[seat_of.at(ev.actor)].push_back(action_text(ev));
  }
  dp.pot = state.pot_total();

  if (state.is_terminal()) {
    dp.terminal = true;
    if (state.outcome_known()) {
      auto pay = state.resolve_showdown();
      for (const auto& [seat, amount] : pay)
        if (amount > Money{}) dp.winners.emplace_back(seat, amount);
      int live = 0;
      for (const auto& p : state.players()) live += p.folded ? 0 : 1;
      if (live > 1 && !dp.winners.empty()) {
        const PlayerState& w = state.player(state.index_of_seat(dp.winners.front().first));
        dp.winning_rank = evaluate_best(*w.hole, state.board()).category();
      }
    }
  } else if (state.to_act() && *state.to_act() == hi) {
    LegalActionSet legal = state.legal_actions();
    dp.legal_actions = legal.kinds;
    dp.amount_menu = legal.menu;
  } else if (state.to_act()) {
    dp.waiting_on = state.player(*state.to_act()).seat_no;
  }
  return dp;
}

ActionClass action_class_of(const ActionEvent& ev, const GameState& before) {
  switch (ev.kind) {
    case ActionKind::Check: return ActionClass::Check;
    case ActionKind::Call: return ActionClass::Call;
    case ActionKind::Fold: return ActionClass::Fold;
    case ActionKind::Bet: return ActionClass::Bet;
    case ActionKind::Raise: return ActionClass::Raise;
    case ActionKind::AllIn: {
      if (!before.to_act()) throw std::invalid_argument("no player to act");
      Money target = before.player(*before.to_act()).street_contrib + ev.amount;
      if (target <= before.current_bet()) return ActionClass::Call;
      return before.current_bet().is_zero() ? ActionClass::Bet : ActionClass::Raise;
    }
    default:
      throw std::invalid_argument(std::string(action_kind_name(ev.kind)) + " is not a decision");
  }
}

ExtractResult extract_decision_points(const HandRecord& record, const std::string& hero) {
  ExtractResult out;
  auto diag = [&](const std::string& msg) {
    out.diagnostics.push_back(Diagnostic{record.hand_id, 0, "hand " + record.hand_id + ": " + msg});
  };
  const SeatEntry* seat = record.seat_of(hero);
  if (!seat) {
    diag(hero + " is not seated");
    return out;
  }
  if (!record.hole_cards.count(hero)) {
    diag(hero + "'s cards are not revealed");
    return out;
  }
  for (std::size_t k = 0; k < record.actions.size(); ++k) {
    const ActionEvent& ev = record.actions[k];
    if (ev.actor != hero || ev.kind == ActionKind::PostBlind || ev.kind == ActionKind::Show) continue;
    try {
      GameState state = replay_prefix(record, k);
      if (!state.to_act() || state.player(*state.to_act()).name != hero)
        throw std::runtime_error("replay does not put " + hero + " to act");
      DecisionPoint dp = decision_point_from_state(state, seat->seat_no, record.hand_id);
      const PlayerState& p = state.player(*state.to_act());
      ActionClass cls = action_class_of(ev, state);
      PolicyDecision label{ev.kind, Money{}};
      switch (ev.kind) {
        case ActionKind::Bet: label.amount = p.street_contrib + ev.amount; break;
        case ActionKind::Raise: label.amount = ev.raise_to.value_or(ev.amount); break;
        default: break;
      }
      if (ev.kind == ActionKind::AllIn &&
          std::find(dp.legal_actions.begin(), dp.legal_actions.end(), ActionKind::AllIn) == dp.legal_actions.end()) {
        // The prompt offers no all-in here: express it as the call or raise it was.
        label.kind = cls == ActionClass::Call ? ActionKind::Call : cls == ActionClass::Bet ? ActionKind::Bet : ActionKind::Raise;
        if (cls != ActionClass::Call) label.amount = p.street_contrib + ev.amount;
      }
      if (!label.amount.is_zero()) label.amount = snap_amount(label.amount, dp.amount_menu);
      dp.label_event = ev;
      dp.label = label;
      dp.label_class = cls;
      out.points.push_back(std::move(dp));
    } catch (const std::exception& e) {
      diag(e.what());
      break;
    }
  }
  return out;
}

}  // namespace poker
