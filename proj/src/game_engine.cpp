#include "poker/game_engine.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "poker/amount_grid.hpp"
#include "poker/rng.hpp"

namespace poker {

namespace {

std::size_t board_size_for(Street s) {
  switch (s) {
    case Street::Preflop: return 0;
    case Street::Flop: return 3;
    case Street::Turn: return 4;
    default: return 5;
  }
}

Street next_street(Street s) { return static_cast<Street>(static_cast<int>(s) + 1); }

}  // namespace

void TableConfig::validate() const {
  if (seats.size() < static_cast<std::size_t>(kMinPlayers))
    throw std::invalid_argument("at least 2 players required");
  if (seats.size() > static_cast<std::size_t>(kMaxPlayers))
    throw std::invalid_argument("at most 15 players allowed");
  if (blinds.small_blind <= Money{}) throw std::invalid_argument("small blind must be positive");
  if (blinds.big_blind <= blinds.small_blind) throw std::invalid_argument("big blind must exceed small blind");
  std::set<int> numbers;
  std::set<std::string> names;
  for (const auto& s : seats) {
    if (s.seat_no < 1) throw std::invalid_argument("seat numbers start at 1");
    if (!numbers.insert(s.seat_no).second) throw std::invalid_argument("duplicate seat " + std::to_string(s.seat_no));
    if (s.name.empty()) throw std::invalid_argument("empty player name");
    if (!names.insert(s.name).second) throw std::invalid_argument("duplicate player name " + s.name);
    if (s.stack <= Money{}) throw std::invalid_argument("stack of seat " + std::to_string(s.seat_no) + " must be positive");
  }
  if (!numbers.count(dealer_seat)) throw std::invalid_argument("dealer seat " + std::to_string(dealer_seat) + " is empty");
}

std::string to_string(const PolicyDecision& d) {
  std::string s(action_kind_name(d.kind));
  if (d.kind == ActionKind::Bet || d.kind == ActionKind::Raise) s += " to " + format_money(d.amount);
  return s;
}

bool LegalActionSet::contains(ActionKind k) const {
  auto listed = [&](ActionKind x) { return std::find(kinds.begin(), kinds.end(), x) != kinds.end(); };
  if (k == ActionKind::AllIn) return listed(k) || listed(ActionKind::Bet) || listed(ActionKind::Raise);
  return listed(k);
}

GameState GameState::new_hand(const TableConfig& config) {
  config.validate();
  std::vector<Card> deck = full_deck();
  Rng rng(config.rng_seed);
  rng.shuffle(std::span<Card>(deck));
  DealSpec deal;
  std::vector<SeatConfig> seats = config.seats;
  std::sort(seats.begin(), seats.end(), [](const auto& a, const auto& b) { return a.seat_no < b.seat_no; });
  std::size_t pos = 0;
  for (const auto& s : seats) {
    deal.holes[s.seat_no] = {deck[pos], deck[pos + 1]};
    pos += 2;
  }
  deal.board.assign(deck.begin() + static_cast<std::ptrdiff_t>(pos), deck.begin() + static_cast<std::ptrdiff_t>(pos + 5));
  return new_hand(config, std::move(deal));
}

GameState GameState::new_hand(const TableConfig& config, DealSpec deal) {
  config.validate();
  CardSet used;
  for (const auto& [seat, h] : deal.holes) {
    for (Card c : h) {
      if (used.contains(c)) throw std::invalid_argument("duplicate card " + format_card(c));
      used.insert(c);
    }
  }
  if (deal.board.size() > 5) throw std::invalid_argument("more than 5 board cards");
  for (Card c : deal.board) {
    if (used.contains(c)) throw std::invalid_argument("duplicate card " + format_card(c));
    used.insert(c);
  }

  GameState g;
  g.config_ = config;
  std::sort(g.config_.seats.begin(), g.config_.seats.end(),
            [](const auto& a, const auto& b) { return a.seat_no < b.seat_no; });
  for (const auto& s : g.config_.seats) {
    PlayerState p;
    p.seat_no = s.seat_no;
    p.name = s.name;
    p.starting_stack = s.stack;
    p.stack = s.stack;
    if (auto it = deal.holes.find(s.seat_no); it != deal.holes.end()) p.hole = it->second;
    g.players_.push_back(std::move(p));
  }
  for (const auto& [seat, h] : deal.holes) {
    if (g.index_of_seat(seat) < 0) throw std::invalid_argument("hole cards for empty seat " + std::to_string(seat));
  }
  g.deck_ = std::move(deal.board);
  g.dealer_ = g.index_of_seat(config.dealer_seat);
  if (g.num_players() == 2) {
    g.sb_ = g.dealer_;
    g.bb_ = g.next_index(g.dealer_);
  } else {
    g.sb_ = g.next_index(g.dealer_);
    g.bb_ = g.next_index(g.sb_);
  }
  g.post_blinds();
  return g;
}

int GameState::index_of_seat(int seat_no) const {
  for (int i = 0; i < num_players(); ++i)
    if (players_[i].seat_no == seat_no) return i;
  return -1;
}

void GameState::post_blinds() {
  auto post = [&](int i, Money blind) {
    PlayerState& p = players_[i];
    Money amt = std::min(blind, p.stack);
    p.stack -= amt;
    p.street_contrib += amt;
    p.total_contrib += amt;
    if (p.stack.is_zero()) p.all_in = true;
    history_.push_back(ActionEvent{Street::Preflop, p.name, ActionKind::PostBlind, amt, std::nullopt});
  };
  post(sb_, config_.blinds.small_blind);
  post(bb_, config_.blinds.big_blind);
  current_bet_ = config_.blinds.big_blind;
  min_raise_ = config_.blinds.big_blind;
  full_raise_level_ = config_.blinds.big_blind;
  street_ = Street::Preflop;
  rebuild_pots();
  advance(bb_);
}

Money GameState::pot_total() const {
  Money t;
  for (const auto& p : players_) t += p.total_contrib;
  return t;
}

std::size_t GameState::cards_needed() const {
  if (!awaiting_board_) return 0;
  return board_size_for(next_street(street_)) - board_.size();
}

int GameState::live_count() const {
  return static_cast<int>(std::count_if(players_.begin(), players_.end(), [](const auto& p) { return !p.folded; }));
}

bool GameState::needs_action(int i) const {
  const PlayerState& p = players_[i];
  if (p.folded || p.all_in) return false;
  return !p.acted || p.street_contrib < current_bet_;
}

bool GameState::can_raise(int i) const {
  const PlayerState& p = players_[i];
  if (p.acted_level && *p.acted_level >= full_raise_level_) return false;
  if (p.stack <= current_bet_ - p.street_contrib) return false;
  for (int j = 0; j < num_players(); ++j) {
    if (j != i && !players_[j].folded && !players_[j].all_in) return true;
  }
  // Everyone else is all-in: only a call can change anything.
  return false;
}

LegalActionSet GameState::legal_actions() const {
  LegalActionSet s;
  if (terminal_ || !to_act_) return s;
  int i = *to_act_;
  const PlayerState& p = players_[i];
  Money to_call = current_bet_ - p.street_contrib;
  s.call_amount = std::min(to_call, p.stack);
  s.max_to = p.street_contrib + p.stack;
  s.menu = amount_menu(config_.blinds.big_blind, s.max_to);
  Money min_to = current_bet_.is_zero() ? config_.blinds.big_blind : current_bet_ + min_raise_;
  s.min_to = std::min(min_to, s.max_to);

  s.kinds.push_back(ActionKind::Fold);
  if (to_call.is_zero()) {
    s.kinds.push_back(ActionKind::Check);
    if (can_raise(i) || (current_bet_.is_zero() && p.stack > Money{})) {
      bool any_other = false;
      for (int j = 0; j < num_players(); ++j)
        if (j != i && !players_[j].folded && !players_[j].all_in) any_other = true;
      if (any_other) {
        if (s.max_to > min_to) s.kinds.push_back(current_bet_.is_zero() ? ActionKind::Bet : ActionKind::Raise);
        else s.kinds.push_back(ActionKind::AllIn);
      }
    }
    return s;
  }
  if (p.stack <= to_call) {
    s.kinds.push_back(ActionKind::AllIn);
    return s;
  }
  bool short_all_in = false;
  if (can_raise(i)) {
    if (s.max_to > min_to) s.kinds.push_back(ActionKind::Raise);
    else short_all_in = true;
  }
  s.kinds.push_back(ActionKind::Call);
  if (short_all_in) s.kinds.push_back(ActionKind::AllIn);
  return s;
}

GameState GameState::apply_action(const PolicyDecision& decision) const {
  GameState next = *this;
  next.apply(decision);
  return next;
}

void GameState::apply(const PolicyDecision& decision) {
  if (terminal_) throw IllegalAction("hand is over");
  if (awaiting_board_) throw IllegalAction("board cards must be dealt before further action");
  if (!to_act_) throw IllegalAction("no player to act");
  int i = *to_act_;
  PlayerState& p = players_[i];
  Money to_call = current_bet_ - p.street_contrib;
  Money max_to = p.street_contrib + p.stack;

  ActionKind kind = decision.kind;
  Money target = decision.amount;
  // Calls and bets that use the whole stack are all-ins.
  if (kind == ActionKind::Call && !to_call.is_zero() && p.stack <= to_call) kind = ActionKind::AllIn;
  if ((kind == ActionKind::Bet || kind == ActionKind::Raise) && target == max_to) kind = ActionKind::AllIn;

  ActionEvent ev{street_, p.name, kind, Money{}, std::nullopt};
  Money new_contrib = p.street_contrib;

  switch (kind) {
    case ActionKind::Fold:
      break;
    case ActionKind::Check:
      if (!to_call.is_zero()) throw IllegalAction("check not allowed when facing a bet of " + format_money(to_call));
      break;
    case ActionKind::Call:
      if (to_call.is_zero()) throw IllegalAction("nothing to call");
      new_contrib = current_bet_;
      break;
    case ActionKind::Bet:
      if (!current_bet_.is_zero()) throw IllegalAction("bet not allowed after a bet; raise instead");
      if (target > max_to) throw IllegalAction("bet exceeds stack");
      if (target < config_.blinds.big_blind)
        throw IllegalAction("bet below minimum " + format_money(config_.blinds.big_blind));
      new_contrib = target;
      break;
    case ActionKind::Raise:
      if (current_bet_.is_zero()) throw IllegalAction("raise not allowed without a bet; bet instead");
      if (!can_raise(i)) throw IllegalAction("betting is not reopened for this player");
      if (target > max_to) throw IllegalAction("raise exceeds stack");
      if (target < current_bet_ + min_raise_)
        throw IllegalAction("raise to " + format_money(target) + " below minimum " +
                            format_money(current_bet_ + min_raise_));
      new_contrib = target;
      break;
    case ActionKind::AllIn:
      if (p.stack.is_zero()) throw IllegalAction("no chips left");
      if (max_to > current_bet_ && !current_bet_.is_zero() && p.acted_level && *p.acted_level >= full_raise_level_)
        throw IllegalAction("betting is not reopened for this player");
      new_contrib = max_to;
      break;
    default:
      throw IllegalAction(std::string(action_kind_name(kind)) + " is not a betting decision");
  }

  // Validation done; mutate.
  if (kind == ActionKind::Fold) {
    p.folded = true;
  } else {
    Money added = new_contrib - p.street_contrib;
    ev.amount = added;
    if (kind == ActionKind::Raise) {
      ev.amount = new_contrib - current_bet_;
      ev.raise_to = new_contrib;
    }
    p.stack -= added;
    p.street_contrib = new_contrib;
    p.total_contrib += added;
    if (p.stack.is_zero()) p.all_in = true;
    if (new_contrib > current_bet_) {
      Money raise_size = new_contrib - current_bet_;
      if (current_bet_.is_zero()) {
        min_raise_ = std::max(raise_size, config_.blinds.big_blind);
        full_raise_level_ = new_contrib;
      } else if (raise_size >= min_raise_) {
        min_raise_ = raise_size;
        full_raise_level_ = new_contrib;
      }
      current_bet_ = new_contrib;
      last_aggressor_ = i;
    }
  }
  p.acted = true;
  p.acted_level = full_raise_level_;
  history_.push_back(std::move(ev));
  rebuild_pots();
  advance(i);
}

void GameState::advance(int actor) {
  if (live_count() == 1) {
    finish();
    return;
  }
  for (int k = 1; k <= num_players(); ++k) {
    int j = (actor + k) % num_players();
    if (needs_action(j)) {
      to_act_ = j;
      return;
    }
  }
  close_street();
}

void GameState::return_uncalled() {
  // The largest contribution above everyone else's goes back to its owner.
  int top = -1;
  Money top_amt, second;
  for (int i = 0; i < num_players(); ++i) {
    Money c = players_[i].street_contrib;
    if (top < 0 || c > top_amt) {
      if (top >= 0) second = std::max(second, top_amt);
      top = i;
      top_amt = c;
    } else {
      second = std::max(second, c);
    }
  }
  if (top < 0 || top_amt <= second) return;
  Money back = top_amt - second;
  PlayerState& p = players_[top];
  p.street_contrib -= back;
  p.total_contrib -= back;
  p.stack += back;
  p.all_in = p.stack.is_zero();
  uncalled_.push_back(UncalledReturn{p.name, back, street_});
}

void GameState::close_street() {
  to_act_.reset();
  return_uncalled();
  for (auto& p : players_) {
    p.street_contrib = Money{};
    p.acted = false;
    p.acted_level.reset();
  }
  current_bet_ = Money{};
  min_raise_ = config_.blinds.big_blind;
  full_raise_level_ = Money{};
  rebuild_pots();

  if (live_count() == 1) {
    finish();
    return;
  }
  if (street_ == Street::River) {
    street_ = Street::Showdown;
    finish();
    return;
  }
  std::size_t need = board_size_for(next_street(street_)) - board_.size();
  deal_from_deck(need);
  if (board_.size() < board_size_for(next_street(street_))) {
    awaiting_board_ = true;
    return;
  }
  street_ = next_street(street_);
  start_street();
}

void GameState::deal_from_deck(std::size_t n) {
  while (n > 0 && !deck_.empty()) {
    board_.push_back(deck_.front());
    board_streets_.emplace_back(deck_.front(), next_street(street_));
    deck_.erase(deck_.begin());
    --n;
  }
}

void GameState::deal_board(std::span<const Card> cards) {
  if (!awaiting_board_) throw IllegalAction("no board cards expected now");
  std::size_t need = cards_needed();
  if (cards.size() != need)
    throw IllegalAction("expected " + std::to_string(need) + " board card(s), got " + std::to_string(cards.size()));
  CardSet used;
  for (Card c : board_) used.insert(c);
  for (const auto& p : players_)
    if (p.hole) {
      used.insert((*p.hole)[0]);
      used.insert((*p.hole)[1]);
    }
  for (Card c : cards) {
    if (used.contains(c)) throw IllegalAction("card " + format_card(c) + " is already in play");
    used.insert(c);
  }
  for (Card c : cards) {
    board_.push_back(c);
    board_streets_.emplace_back(c, next_street(street_));
  }
  awaiting_board_ = false;
  street_ = next_street(street_);
  start_street();
}

void GameState::reveal_hole(int seat_no, HoleCards cards) {
  int i = index_of_seat(seat_no);
  if (i < 0) throw IllegalAction("no player in seat " + std::to_string(seat_no));
  if (cards[0] == cards[1]) throw IllegalAction("duplicate card " + format_card(cards[0]));
  if (players_[i].hole) {
    if (*players_[i].hole != cards) throw IllegalAction("seat " + std::to_string(seat_no) + " already holds other cards");
    return;
  }
  CardSet used;
  for (Card c : board_) used.insert(c);
  for (Card c : deck_) used.insert(c);
  for (const auto& p : players_)
    if (p.hole) {
      used.insert((*p.hole)[0]);
      used.insert((*p.hole)[1]);
    }
  for (Card c : cards)
    if (used.contains(c)) throw IllegalAction("card " + format_card(c) + " is already in play");
  players_[i].hole = cards;
}

void GameState::start_street() {
  int able = 0;
  for (const auto& p : players_)
    if (!p.folded && !p.all_in) ++able;
  if (able < 2) {
    // Nobody left to bet against: run the board out.
    close_street();
    return;
  }
  for (int k = 1; k <= num_players(); ++k) {
    int j = (dealer_ + k) % num_players();
    if (needs_action(j)) {
      to_act_ = j;
      return;
    }
  }
  close_street();
}

void GameState::rebuild_pots() {
  pots_.clear();
  std::vector<Money> levels;
  for (const auto& p : players_)
    if (!p.folded && p.total_contrib > Money{}) levels.push_back(p.total_contrib);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  Money prev;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    Money level = levels[li];
    bool last = li + 1 == levels.size();
    Pot pot;
    for (const auto& p : players_) {
      Money hi = last ? p.total_contrib : std::min(p.total_contrib, level);
      Money lo = std::min(p.total_contrib, prev);
      if (hi > lo) pot.amount += hi - lo;
      if (!p.folded && p.total_contrib >= level) pot.eligible_seats.push_back(p.seat_no);
    }
    pots_.push_back(std::move(pot));
    prev = level;
  }
  if (pots_.empty()) {
    Money t = pot_total();
    if (t > Money{}) pots_.push_back(Pot{t, {}});
  }
}

void GameState::finish() {
  if (street_ != Street::Showdown) return_uncalled();
  for (auto& p : players_) p.street_contrib = Money{};
  current_bet_ = Money{};
  terminal_ = true;
  to_act_.reset();
  rebuild_pots();
}

bool GameState::outcome_known() const {
  if (!terminal_) return false;
  if (live_count() == 1) return true;
  if (board_.size() < 5) return false;
  return std::all_of(players_.begin(), players_.end(), [](const auto& p) { return p.folded || p.hole.has_value(); });
}

std::map<int, Money> GameState::resolve_showdown() const {
  if (!terminal_) throw std::logic_error("hand is not over");
  std::map<int, Money> pay;
  for (const auto& p : players_) pay[p.seat_no] = Money{};
  if (live_count() == 1) {
    auto it = std::find_if(players_.begin(), players_.end(), [](const auto& p) { return !p.folded; });
    pay[it->seat_no] = pot_total();
    return pay;
  }
  if (!outcome_known()) throw std::logic_error("showdown needs every contender's hole cards and a full board");
  std::map<int, HandValue> values;
  for (const auto& p : players_)
    if (!p.folded) values.emplace(p.seat_no, evaluate_best(*p.hole, board_));
  // Seats ordered from the first seat left of the dealer.
  std::vector<int> order;
  for (int k = 1; k <= num_players(); ++k) order.push_back(players_[(dealer_ + k) % num_players()].seat_no);
  for (const auto& pot : pots_) {
    if (pot.amount.is_zero()) continue;
    std::vector<int> winners;
    const HandValue* best = nullptr;
    for (int seat : order) {
      if (std::find(pot.eligible_seats.begin(), pot.eligible_seats.end(), seat) == pot.eligible_seats.end()) continue;
      const HandValue& v = values.at(seat);
      if (!best || v > *best) {
        best = &v;
        winners = {seat};
      } else if (v == *best) {
        winners.push_back(seat);
      }
    }
    if (winners.empty()) throw std::logic_error("pot without eligible players");
    std::int64_t n = static_cast<std::int64_t>(winners.size());
    std::int64_t share = pot.amount.minor() / n;
    std::int64_t odd = pot.amount.minor() % n;
    for (std::int64_t w = 0; w < n; ++w)
      pay[winners[w]] += Money::from_minor(share + (w < odd ? 1 : 0));
  }
  return pay;
}

std::map<int, Money> GameState::final_deltas() const {
  auto pay = resolve_showdown();
  for (const auto& p : players_) pay[p.seat_no] -= p.total_contrib;
  return pay;
}

Money GameState::chips_in_play() const {
  Money t;
  for (const auto& p : players_) t += p.stack;
  for (const auto& pot : pots_) t += pot.amount;
  return t;
}

Money GameState::starting_chips() const {
  Money t;
  for (const auto& p : players_) t += p.starting_stack;
  return t;
}

HandRecord GameState::to_record(const std::string& hand_id, Money rake) const {
  if (!terminal_) throw std::logic_error("hand is not over");
  if (rake < Money{} || rake > pot_total()) throw std::invalid_argument("rake must lie between 0 and the pot");
  HandRecord r;
  r.hand_id = hand_id;
  r.table_name = "Sim";
  r.max_seats = std::max(num_players(), players_.back().seat_no);
  r.timestamp = "2024/01/01 00:00:00 ET";
  r.blinds = config_.blinds;
  r.dealer_seat = config_.seats[dealer_].seat_no;
  for (const auto& p : players_) r.seats.push_back(SeatEntry{p.seat_no, p.name, p.starting_stack});
  for (const auto& [c, s] : board_streets_) r.board.push_back(BoardCard{c, s});
  r.actions = history_;
  r.uncalled = uncalled_;
  r.pot_total = pot_total();
  r.rake = rake;

  auto pay = resolve_showdown();
  bool showdown = live_count() > 1;
  if (showdown) {
    for (int k = 1; k <= num_players(); ++k) {
      const PlayerState& p = players_[(dealer_ + k) % num_players()];
      if (p.folded) continue;
      r.actions.push_back(ActionEvent{Street::Showdown, p.name, ActionKind::Show, Money{}, std::nullopt});
      r.hole_cards[p.name] = *p.hole;
      r.shown_ranks[p.name] = evaluate_best(*p.hole, board_).category();
    }
  }
  // Collections per pot, rake taken from the first collections.
  Money rake_left = rake;
  std::size_t live_pots = std::count_if(pots_.begin(), pots_.end(), [](const Pot& p) { return p.amount > Money{}; });
  if (showdown) {
    std::map<int, HandValue> values;
    for (const auto& p : players_)
      if (!p.folded) values.emplace(p.seat_no, evaluate_best(*p.hole, board_));
    std::vector<int> order;
    for (int k = 1; k <= num_players(); ++k) order.push_back(players_[(dealer_ + k) % num_players()].seat_no);
    int pot_no = 0;
    for (const auto& pot : pots_) {
      if (pot.amount.is_zero()) continue;
      std::string name = live_pots == 1 ? "pot" : pot_no == 0 ? "main pot" : "side pot-" + std::to_string(pot_no);
      ++pot_no;
      std::vector<int> winners;
      const HandValue* best = nullptr;
      for (int seat : order) {
        if (std::find(pot.eligible_seats.begin(), pot.eligible_seats.end(), seat) == pot.eligible_seats.end()) continue;
        const HandValue& v = values.at(seat);
        if (!best || v > *best) {
          best = &v;
          winners = {seat};
        } else if (v == *best) {
          winners.push_back(seat);
        }
      }
      std::int64_t n = static_cast<std::int64_t>(winners.size());
      std::int64_t share = pot.amount.minor() / n, odd = pot.amount.minor() % n;
      for (std::int64_t w = 0; w < n; ++w) {
        Money amt = Money::from_minor(share + (w < odd ? 1 : 0));
        Money cut = std::min(rake_left, amt);
        rake_left -= cut;
        amt -= cut;
        if (amt > Money{})
          r.collections.push_back(Collection{players_[index_of_seat(winners[w])].name, amt, name});
      }
    }
  } else {
    for (const auto& p : players_) {
      if (p.folded) continue;
      Money amt = pay.at(p.seat_no);
      Money cut = std::min(rake_left, amt);
      rake_left -= cut;
      amt -= cut;
      if (amt > Money{}) r.collections.push_back(Collection{p.name, amt, "pot"});
    }
  }
  if (!rake_left.is_zero()) throw std::invalid_argument("rake exceeds the pot");
  std::map<std::string, Money> won;
  for (const auto& c : r.collections) won[c.player] += c.amount;
  for (const auto& p : players_) r.results[p.name] = won[p.name] - p.total_contrib;
  return r;
}

TableConfig table_config_from_record(const HandRecord& record) {
  TableConfig c;
  for (const auto& s : record.seats) c.seats.push_back(SeatConfig{s.seat_no, s.player_name, s.starting_stack});
  c.blinds = record.blinds;
  c.dealer_seat = record.dealer_seat;
  return c;
}

namespace {

GameState replay_events(const HandRecord& record, std::size_t stop) {
  TableConfig config = table_config_from_record(record);
  DealSpec deal;
  for (const auto& [name, h] : record.hole_cards) {
    const SeatEntry* s = record.seat_of(name);
    if (!s) throw std::runtime_error("hole cards for unseated player " + name);
    deal.holes[s->seat_no] = h;
  }
  deal.board = record.board_cards();
  GameState g = GameState::new_hand(config, std::move(deal));

  std::vector<const ActionEvent*> posts;
  for (const auto& a : record.actions)
    if (a.kind == ActionKind::PostBlind) posts.push_back(&a);
  std::vector<const ActionEvent*> engine_posts;
  for (const auto& a : g.history())
    if (a.kind == ActionKind::PostBlind) engine_posts.push_back(&a);
  if (posts.size() != engine_posts.size())
    throw std::runtime_error("blind posts do not match the seating");
  for (std::size_t k = 0; k < posts.size(); ++k) {
    if (posts[k]->actor != engine_posts[k]->actor || posts[k]->amount != engine_posts[k]->amount)
      throw std::runtime_error("blind post by " + posts[k]->actor + " does not match the engine");
  }

  std::size_t end = std::min(stop, record.actions.size());
  for (std::size_t k = 0; k < end; ++k) {
    const ActionEvent& a = record.actions[k];
    if (a.kind == ActionKind::PostBlind || a.kind == ActionKind::Show) continue;
    if (g.is_terminal()) throw std::runtime_error("action by " + a.actor + " after the hand ended");
    if (g.awaiting_board()) throw std::runtime_error("board missing before action by " + a.actor);
    const PlayerState& p = g.player(*g.to_act());
    if (p.name != a.actor) throw std::runtime_error("expected " + p.name + " to act, log has " + a.actor);
    if (a.street != g.street()) throw std::runtime_error("action by " + a.actor + " on the wrong street");
    PolicyDecision d{a.kind, Money{}};
    if (a.kind == ActionKind::Bet) d.amount = p.street_contrib + a.amount;
    if (a.kind == ActionKind::Raise) d.amount = *a.raise_to;
    g.apply(d);
    if (!g.chips_conserved()) throw std::logic_error("chip conservation violated");
  }
  return g;
}

}  // namespace

GameState replay_record(const HandRecord& record) { return replay_events(record, record.actions.size()); }

GameState replay_prefix(const HandRecord& record, std::size_t stop) { return replay_events(record, stop); }

}  // namespace poker
