#include "poker/hand_history.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace poker {

namespace {

using Kind = HandParseError::Kind;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }
bool ends_with(std::string_view s, std::string_view p) {
  return s.size() >= p.size() && s.substr(s.size() - p.size()) == p;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  return lines;
}

bool is_header(std::string_view line) {
  line = trim(line);
  // Some exports carry a UTF-8 byte order mark on the first hand.
  if (starts_with(line, "\xEF\xBB\xBF")) line.remove_prefix(3);
  return (starts_with(line, "PokerStars ") && line.find("Hand #") != std::string_view::npos) ||
         starts_with(line, "Hand #");
}

// Cards inside the last "[...]" group of a line.
std::vector<Card> last_bracket_cards(std::string_view line, std::size_t lineno) {
  auto open = line.rfind('[');
  auto close = line.rfind(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    throw HandParseError(Kind::Structural, lineno, "expected card list in '" + std::string(line) + "'");
  std::vector<Card> out;
  std::istringstream in{std::string(line.substr(open + 1, close - open - 1))};
  std::string tok;
  while (in >> tok) {
    try {
      out.push_back(parse_card(tok));
    } catch (const CardError& e) {
      throw HandParseError(Kind::Structural, lineno, e.what());
    }
  }
  return out;
}

Money money_at(std::string_view token, std::size_t lineno) {
  try {
    return parse_money(trim(token));
  } catch (const MoneyFormatError& e) {
    throw HandParseError(Kind::Structural, lineno, e.what());
  }
}

std::optional<HandCategory> category_from_description(std::string_view desc) {
  std::string d(desc);
  std::transform(d.begin(), d.end(), d.begin(), [](unsigned char c) { return std::tolower(c); });
  if (d.find("royal flush") != std::string::npos) return HandCategory::RoyalFlush;
  if (d.find("straight flush") != std::string::npos) return HandCategory::StraightFlush;
  if (d.find("four of a kind") != std::string::npos) return HandCategory::FourOfAKind;
  if (d.find("full house") != std::string::npos) return HandCategory::FullHouse;
  if (d.find("flush") != std::string::npos) return HandCategory::Flush;
  if (d.find("straight") != std::string::npos) return HandCategory::Straight;
  if (d.find("three of a kind") != std::string::npos) return HandCategory::ThreeOfAKind;
  if (d.find("two pair") != std::string::npos) return HandCategory::TwoPair;
  if (d.find("pair") != std::string::npos) return HandCategory::OnePair;
  if (d.find("high card") != std::string::npos) return HandCategory::HighCard;
  return std::nullopt;
}

std::string describe(HandCategory c) {
  switch (c) {
    case HandCategory::HighCard: return "high card";
    case HandCategory::OnePair: return "a pair";
    case HandCategory::TwoPair: return "two pair";
    case HandCategory::ThreeOfAKind: return "three of a kind";
    case HandCategory::Straight: return "a straight";
    case HandCategory::Flush: return "a flush";
    case HandCategory::FullHouse: return "a full house";
    case HandCategory::FourOfAKind: return "four of a kind";
    case HandCategory::StraightFlush: return "a straight flush";
    case HandCategory::RoyalFlush: return "a Royal Flush";
  }
  return "high card";
}

class BlockParser {
 public:
  BlockParser(std::string_view text, std::size_t first_line) : text_(text), first_line_(first_line) {}

  ParsedHand run() {
    auto lines = split_lines(text_);
    std::size_t i = 0;
    while (i < lines.size() && trim(lines[i]).empty()) ++i;
    if (i == lines.size()) throw HandParseError(Kind::Structural, first_line_, "empty hand block");
    if (!is_header(lines[i]))
      throw HandParseError(Kind::Structural, first_line_ + i, "missing hand header");
    parse_header(trim(lines[i]), first_line_ + i);
    for (++i; i < lines.size(); ++i) {
      std::string_view line = trim(lines[i]);
      if (line.empty()) continue;
      lineno_ = first_line_ + i;
      parse_line(line);
    }
    if (!saw_summary_) throw HandParseError(Kind::Structural, lineno_, "missing summary section");
    finish();
    out_.raw_text = std::string(text_);
    out_.first_line = first_line_;
    return std::move(out_);
  }

 private:
  HandRecord& rec() { return out_.record; }
  const HandRecord& rec() const { return out_.record; }

  void ignore(std::string_view line, std::string_view why) {
    out_.ignored.push_back({{}, lineno_, std::string(why) + ": " + std::string(line)});
  }

  void parse_header(std::string_view line, std::size_t lineno) {
    auto hash = line.find('#');
    auto colon = line.find(':', hash);
    if (hash == std::string_view::npos || colon == std::string_view::npos)
      throw HandParseError(Kind::Structural, lineno, "malformed hand header");
    rec().hand_id = std::string(line.substr(hash + 1, colon - hash - 1));
    auto open = line.find('(', colon);
    auto close = line.find(')', open);
    if (open == std::string_view::npos || close == std::string_view::npos)
      throw HandParseError(Kind::Structural, lineno, "hand header lacks blinds");
    std::string_view blinds = line.substr(open + 1, close - open - 1);
    std::string_view currency;
    if (auto sp = blinds.find(' '); sp != std::string_view::npos) {
      currency = trim(blinds.substr(sp + 1));
      blinds = blinds.substr(0, sp);
    }
    auto slash = blinds.find('/');
    if (slash == std::string_view::npos) throw HandParseError(Kind::Structural, lineno, "malformed blinds");
    rec().blinds.small_blind = money_at(blinds.substr(0, slash), lineno);
    rec().blinds.big_blind = money_at(blinds.substr(slash + 1), lineno);
    rec().blinds.currency = currency.empty() ? "USD" : std::string(currency);
    if (!(Money{} < rec().blinds.small_blind && rec().blinds.small_blind < rec().blinds.big_blind))
      throw HandParseError(Kind::Semantic, lineno, "blinds must satisfy 0 < small < big");
    if (auto dash = line.find(" - ", close); dash != std::string_view::npos)
      rec().timestamp = std::string(trim(line.substr(dash + 3)));
  }

  const SeatEntry* actor_prefix(std::string_view line, std::string_view sep) const {
    const SeatEntry* best = nullptr;
    for (const auto& s : rec().seats) {
      if (starts_with(line, s.player_name) && starts_with(line.substr(s.player_name.size()), sep)) {
        if (!best || s.player_name.size() > best->player_name.size()) best = &s;
      }
    }
    return best;
  }

  void enter_street(Street s) {
    if (s < street_) throw HandParseError(Kind::Semantic, lineno_, "street out of order");
    street_ = s;
    street_contrib_.clear();
    street_max_ = Money{};
  }

  Money& stack(const std::string& p) { return stack_.at(p); }

  // Chips moving from a player's stack into the pot.
  void commit(const std::string& p, Money added) {
    if (added < Money{}) throw HandParseError(Kind::Semantic, lineno_, "negative amount for " + p);
    if (added > stack(p))
      throw HandParseError(Kind::Semantic, lineno_,
                           p + " puts in " + format_money(added) + " with only " + format_money(stack(p)) + " behind");
    stack(p) -= added;
    street_contrib_[p] += added;
    street_max_ = std::max(street_max_, street_contrib_[p]);
  }

  void parse_line(std::string_view line) {
    if (in_summary_) {
      parse_summary_line(line);
      return;
    }
    if (starts_with(line, "Table '")) {
      auto close = line.find('\'', 7);
      if (close == std::string_view::npos) throw HandParseError(Kind::Structural, lineno_, "malformed table line");
      rec().table_name = std::string(line.substr(7, close - 7));
      std::string_view rest = trim(line.substr(close + 1));
      if (auto dash = rest.find("-max"); dash != std::string_view::npos) {
        try {
          rec().max_seats = std::stoi(std::string(rest.substr(0, dash)));
        } catch (const std::exception&) {
          throw HandParseError(Kind::Structural, lineno_, "malformed table size");
        }
      }
      auto hash = rest.find("Seat #");
      if (hash == std::string_view::npos) throw HandParseError(Kind::Structural, lineno_, "table line lacks button seat");
      rec().dealer_seat = std::atoi(std::string(rest.substr(hash + 6)).c_str());
      return;
    }
    if (starts_with(line, "Seat ") && !saw_hole_cards_) {
      parse_seat(line);
      return;
    }
    if (starts_with(line, "*** ")) {
      parse_marker(line);
      return;
    }
    if (starts_with(line, "Dealt to ")) {
      std::string_view rest = line.substr(9);
      auto br = rest.rfind(" [");
      std::string name(rest.substr(0, br));
      if (!rec().seat_of(name)) throw HandParseError(Kind::Semantic, lineno_, "cards dealt to unseated " + name);
      auto cards = last_bracket_cards(line, lineno_);
      if (cards.size() != 2) throw HandParseError(Kind::Structural, lineno_, "expected two hole cards");
      set_hole(name, cards);
      return;
    }
    if (starts_with(line, "Uncalled bet (")) {
      auto close = line.find(')');
      auto to = line.find(" returned to ");
      if (close == std::string_view::npos || to == std::string_view::npos)
        throw HandParseError(Kind::Structural, lineno_, "malformed uncalled bet line");
      Money amount = money_at(line.substr(14, close - 14), lineno_);
      std::string name(trim(line.substr(to + 13)));
      if (!rec().seat_of(name)) throw HandParseError(Kind::Semantic, lineno_, "uncalled bet to unseated " + name);
      if (amount > street_contrib_[name])
        throw HandParseError(Kind::Semantic, lineno_, "uncalled bet exceeds " + name + "'s contribution");
      street_contrib_[name] -= amount;
      stack(name) += amount;
      rec().uncalled.push_back({name, amount, street_});
      return;
    }
    if (const SeatEntry* s = actor_prefix(line, " collected ")) {
      std::string_view rest = line.substr(s->player_name.size() + 11);
      auto from = rest.find(" from ");
      Collection c;
      c.player = s->player_name;
      c.amount = money_at(rest.substr(0, from), lineno_);
      if (from != std::string_view::npos) c.pot = std::string(trim(rest.substr(from + 6)));
      rec().collections.push_back(std::move(c));
      return;
    }
    if (const SeatEntry* s = actor_prefix(line, ": ")) {
      parse_action(s->player_name, line.substr(s->player_name.size() + 2));
      return;
    }
    ignore(line, "unrecognized line");
  }

  void parse_seat(std::string_view line) {
    auto colon = line.find(": ");
    auto open = line.rfind(" (");
    if (colon == std::string_view::npos || open == std::string_view::npos || open < colon)
      throw HandParseError(Kind::Structural, lineno_, "malformed seat line");
    if (line.find("sitting out") != std::string_view::npos) {
      ignore(line, "player sitting out");
      return;
    }
    SeatEntry seat;
    seat.seat_no = std::atoi(std::string(line.substr(5, colon - 5)).c_str());
    seat.player_name = std::string(line.substr(colon + 2, open - colon - 2));
    std::string_view chips = line.substr(open + 2);
    auto in = chips.find(" in chips");
    if (in == std::string_view::npos) throw HandParseError(Kind::Structural, lineno_, "seat line lacks chip count");
    seat.starting_stack = money_at(chips.substr(0, in), lineno_);
    if (seat.seat_no < 1) throw HandParseError(Kind::Structural, lineno_, "seat number must be positive");
    for (const auto& other : rec().seats) {
      if (other.seat_no == seat.seat_no) throw HandParseError(Kind::Semantic, lineno_, "duplicate seat number");
      if (other.player_name == seat.player_name) throw HandParseError(Kind::Semantic, lineno_, "duplicate player name");
    }
    stack_[seat.player_name] = seat.starting_stack;
    rec().seats.push_back(std::move(seat));
  }

  void parse_marker(std::string_view line) {
    if (starts_with(line, "*** HOLE CARDS ***")) {
      saw_hole_cards_ = true;
      return;
    }
    if (starts_with(line, "*** SUMMARY ***")) {
      in_summary_ = true;
      saw_summary_ = true;
      return;
    }
    if (starts_with(line, "*** SHOW DOWN ***")) {
      saw_hole_cards_ = true;
      enter_street(Street::Showdown);
      return;
    }
    Street s;
    std::size_t expected;
    if (starts_with(line, "*** FLOP ***")) {
      s = Street::Flop;
      expected = 3;
    } else if (starts_with(line, "*** TURN ***")) {
      s = Street::Turn;
      expected = 1;
    } else if (starts_with(line, "*** RIVER ***")) {
      s = Street::River;
      expected = 1;
    } else {
      ignore(line, "unrecognized section marker");
      return;
    }
    saw_hole_cards_ = true;
    enter_street(s);
    auto cards = last_bracket_cards(line, lineno_);
    if (cards.size() != expected)
      throw HandParseError(Kind::Structural, lineno_, "wrong number of cards for " + std::string(street_name(s)));
    for (Card c : cards) {
      for (const auto& b : rec().board)
        if (b.card == c) throw HandParseError(Kind::Semantic, lineno_, "duplicate board card " + format_card(c));
      rec().board.push_back({c, s});
    }
  }

  void set_hole(const std::string& name, const std::vector<Card>& cards) {
    HoleCards h{cards[0], cards[1]};
    auto it = rec().hole_cards.find(name);
    if (it != rec().hole_cards.end() && it->second != h)
      throw HandParseError(Kind::Semantic, lineno_, "conflicting hole cards for " + name);
    rec().hole_cards[name] = h;
  }

  void parse_action(const std::string& actor, std::string_view rest) {
    ActionEvent ev;
    ev.street = street_;
    ev.actor = actor;
    bool all_in = false;
    if (ends_with(rest, " and is all-in")) {
      all_in = true;
      rest = rest.substr(0, rest.size() - 14);
    }
    auto amount_after = [&](std::string_view verb) { return money_at(rest.substr(verb.size()), lineno_); };

    if (starts_with(rest, "posts small blind ") || starts_with(rest, "posts big blind ")) {
      if (saw_hole_cards_) throw HandParseError(Kind::Semantic, lineno_, "blind posted after the deal");
      ev.kind = ActionKind::PostBlind;
      ev.amount = money_at(rest.substr(rest.rfind(' ') + 1), lineno_);
      commit(actor, ev.amount);
      if (all_in && !stack(actor).is_zero())
        throw HandParseError(Kind::Semantic, lineno_, "all-in blind leaves chips behind");
    } else if (rest == "folds" || starts_with(rest, "folds [")) {
      ev.kind = ActionKind::Fold;
      if (starts_with(rest, "folds [")) set_hole(actor, last_bracket_cards(rest, lineno_));
    } else if (rest == "checks") {
      ev.kind = ActionKind::Check;
    } else if (starts_with(rest, "calls ")) {
      ev.kind = all_in ? ActionKind::AllIn : ActionKind::Call;
      ev.amount = amount_after("calls ");
      if (street_contrib_[actor] + ev.amount > street_max_)
        throw HandParseError(Kind::Semantic, lineno_, actor + " calls more than the bet");
      commit(actor, ev.amount);
    } else if (starts_with(rest, "bets ")) {
      ev.kind = all_in ? ActionKind::AllIn : ActionKind::Bet;
      ev.amount = amount_after("bets ");
      commit(actor, ev.amount);
    } else if (starts_with(rest, "raises ")) {
      auto to = rest.find(" to ");
      if (to == std::string_view::npos) throw HandParseError(Kind::Structural, lineno_, "raise without target");
      Money increment = money_at(rest.substr(7, to - 7), lineno_);
      Money target = money_at(rest.substr(to + 4), lineno_);
      if (target - street_max_ != increment)
        throw HandParseError(Kind::Semantic, lineno_,
                             "raise increment " + format_money(increment) + " inconsistent with bet " +
                                 format_money(street_max_) + " and target " + format_money(target));
      Money added = target - street_contrib_[actor];
      commit(actor, added);
      if (all_in) {
        ev.kind = ActionKind::AllIn;
        ev.amount = added;
      } else {
        ev.kind = ActionKind::Raise;
        ev.amount = increment;
        ev.raise_to = target;
      }
    } else if (starts_with(rest, "shows [")) {
      ev.kind = ActionKind::Show;
      auto cards = last_bracket_cards(rest.substr(0, rest.find(']') + 1), lineno_);
      if (cards.size() != 2) throw HandParseError(Kind::Structural, lineno_, "expected two shown cards");
      set_hole(actor, cards);
      auto open = rest.find('(');
      if (open != std::string_view::npos) {
        if (auto cat = category_from_description(rest.substr(open))) rec().shown_ranks[actor] = *cat;
      }
    } else if (starts_with(rest, "mucks hand")) {
      rec().mucked.push_back(actor);
      return;
    } else if (starts_with(rest, "doesn't show hand")) {
      return;
    } else {
      ignore(std::string(actor) + ": " + std::string(rest), "unrecognized action");
      return;
    }
    if (all_in && ev.kind == ActionKind::AllIn && !stack(actor).is_zero())
      throw HandParseError(Kind::Semantic, lineno_, actor + " is all-in with chips behind");
    rec().actions.push_back(std::move(ev));
  }

  void parse_summary_line(std::string_view line) {
    if (starts_with(line, "Total pot ")) {
      std::string_view rest = line.substr(10);
      auto sp = rest.find(' ');
      rec().pot_total = money_at(rest.substr(0, sp), lineno_);
      saw_total_ = true;
      if (auto rake = line.find("Rake "); rake != std::string_view::npos) {
        std::string_view r = line.substr(rake + 5);
        rec().rake = money_at(r.substr(0, r.find(' ')), lineno_);
      }
      return;
    }
    if (starts_with(line, "Board [")) {
      auto cards = last_bracket_cards(line, lineno_);
      auto known = rec().board_cards();
      if (cards != known) throw HandParseError(Kind::Semantic, lineno_, "summary board disagrees with streets");
      return;
    }
    if (starts_with(line, "Seat ")) {
      auto colon = line.find(": ");
      if (colon == std::string_view::npos) {
        ignore(line, "unrecognized summary line");
        return;
      }
      std::string_view rest = line.substr(colon + 2);
      const SeatEntry* s = actor_prefix(rest, " ");
      if (!s) {
        ignore(line, "summary line for unknown player");
        return;
      }
      for (std::string_view verb : {" showed [", " mucked ["}) {
        auto at = rest.find(verb);
        if (at != std::string_view::npos) {
          auto close = rest.find(']', at);
          auto cards = last_bracket_cards(rest.substr(0, close + 1), lineno_);
          if (cards.size() == 2) set_hole(s->player_name, cards);
        }
      }
      return;
    }
    ignore(line, "unrecognized summary line");
  }

  void finish() {
    HandRecord& r = rec();
    if (r.seats.empty()) throw HandParseError(Kind::Structural, lineno_, "no seats");
    if (!r.seat_by_number(r.dealer_seat))
      throw HandParseError(Kind::Semantic, lineno_, "button seat " + std::to_string(r.dealer_seat) + " is empty");
    if (!saw_total_) throw HandParseError(Kind::Structural, lineno_, "summary lacks total pot");

    Money committed;
    for (const auto& s : r.seats) committed += s.starting_stack - stack_.at(s.player_name);
    if (committed != r.pot_total)
      throw HandParseError(Kind::Semantic, lineno_,
                           "total pot " + format_money(r.pot_total) + " but players committed " + format_money(committed));
    Money collected;
    std::map<std::string, Money> won;
    for (const auto& c : r.collections) {
      collected += c.amount;
      won[c.player] += c.amount;
    }
    if (collected + r.rake != r.pot_total)
      throw HandParseError(Kind::Semantic, lineno_,
                           "collected " + format_money(collected) + " plus rake " + format_money(r.rake) +
                               " differs from pot " + format_money(r.pot_total));
    for (const auto& s : r.seats) {
      Money invested = s.starting_stack - stack_.at(s.player_name);
      r.results[s.player_name] = won[s.player_name] - invested;
    }
    for (const auto& b : r.board) {
      for (const auto& [name, hole] : r.hole_cards) {
        if (hole[0] == b.card || hole[1] == b.card)
          throw HandParseError(Kind::Semantic, lineno_, "board card " + format_card(b.card) + " also held by " + name);
      }
    }
    CardSet seen;
    for (const auto& [name, hole] : r.hole_cards) {
      for (Card c : hole)
        if (!seen.insert(c)) throw HandParseError(Kind::Semantic, lineno_, "card " + format_card(c) + " dealt twice");
    }
  }

  std::string_view text_;
  std::size_t first_line_;
  std::size_t lineno_ = 0;
  ParsedHand out_;
  Street street_ = Street::Preflop;
  bool saw_hole_cards_ = false;
  bool in_summary_ = false;
  bool saw_summary_ = false;
  bool saw_total_ = false;
  std::map<std::string, Money> stack_;
  std::map<std::string, Money> street_contrib_;
  Money street_max_;
};

}  // namespace

std::string Diagnostic::to_string() const {
  return (source.empty() ? std::string("<input>") : source) + ":" + std::to_string(line) + ": " + message;
}

HandParseError::HandParseError(Kind kind, std::size_t line, const std::string& message)
    : std::runtime_error((kind == Kind::Structural ? "structural error at line " : "semantic error at line ") +
                         std::to_string(line) + ": " + message),
      kind_(kind),
      line_(line) {}

ParsedHand parse_hand_block(std::string_view text, std::size_t first_line) {
  return BlockParser(text, first_line).run();
}

HandRecord parse_hand(std::string_view text) { return parse_hand_block(text).record; }

ParsedFile parse_file(std::string_view text, std::string_view source_name) {
  ParsedFile out;
  auto lines = split_lines(text);
  std::string src(source_name);

  // Offsets of header lines split the input into blocks.
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (is_header(lines[i])) starts.push_back(i);

  std::size_t pre_end = starts.empty() ? lines.size() : starts.front();
  for (std::size_t i = 0; i < pre_end; ++i)
    if (!trim(lines[i]).empty()) out.diagnostics.push_back({src, i + 1, "line outside any hand: " + std::string(lines[i])});

  for (std::size_t b = 0; b < starts.size(); ++b) {
    std::size_t begin = starts[b];
    std::size_t end = b + 1 < starts.size() ? starts[b + 1] : lines.size();
    while (end > begin && trim(lines[end - 1]).empty()) --end;
    const char* from = lines[begin].data();
    const char* to = lines[end - 1].data() + lines[end - 1].size();
    std::string_view block(from, static_cast<std::size_t>(to - from));
    try {
      ParsedHand hand = parse_hand_block(block, begin + 1);
      for (auto& d : hand.ignored) {
        d.source = src;
        out.diagnostics.push_back(d);
      }
      out.hands.push_back(std::move(hand));
    } catch (const HandParseError& e) {
      out.diagnostics.push_back({src, e.line(), e.what()});
    }
  }
  return out;
}

ParsedFile parse_path(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error reading " + path.string());
  return parse_file(ss.str(), path.string());
}

bool has_revealed_showdown(const HandRecord& record) {
  if (record.hole_cards.empty()) return false;
  if (!record.mucked.empty()) return false;
  // Contestants are players who never folded.
  std::vector<std::string> live;
  for (const auto& s : record.seats) {
    bool folded = std::any_of(record.actions.begin(), record.actions.end(), [&](const ActionEvent& a) {
      return a.actor == s.player_name && a.kind == ActionKind::Fold;
    });
    if (!folded) live.push_back(s.player_name);
  }
  if (live.size() < 2) return false;
  bool showdown = std::any_of(record.actions.begin(), record.actions.end(),
                              [](const ActionEvent& a) { return a.street == Street::Showdown; });
  if (!showdown) return false;
  return std::all_of(live.begin(), live.end(), [&](const std::string& p) { return record.hole_cards.count(p) > 0; });
}

std::string serialize_hand(const HandRecord& r) {
  std::ostringstream o;
  auto cash = [](Money m) { return "$" + format_money_log(m); };
  o << "PokerStars Hand #" << r.hand_id << ":  Hold'em No Limit (" << cash(r.blinds.small_blind) << "/"
    << cash(r.blinds.big_blind) << " " << r.blinds.currency << ")";
  if (!r.timestamp.empty()) o << " - " << r.timestamp;
  o << "\n";
  o << "Table '" << r.table_name << "' " << (r.max_seats > 0 ? r.max_seats : static_cast<int>(r.seats.size()))
    << "-max Seat #" << r.dealer_seat << " is the button\n";
  for (const auto& s : r.seats)
    o << "Seat " << s.seat_no << ": " << s.player_name << " (" << cash(s.starting_stack) << " in chips)\n";

  std::map<std::string, Money> stack;
  for (const auto& s : r.seats) stack[s.player_name] = s.starting_stack;
  std::map<std::string, Money> contrib;
  Money street_max;

  std::map<std::string, bool> shown;
  for (const auto& a : r.actions)
    if (a.kind == ActionKind::Show) shown[a.actor] = true;

  auto board_line = [&](Street s) {
    std::vector<std::string> before, now;
    for (const auto& b : r.board) {
      if (b.street < s) before.push_back(format_card(b.card));
      if (b.street == s) now.push_back(format_card(b.card));
    }
    auto join = [](const std::vector<std::string>& v) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + v[i];
      return out;
    };
    std::string name = s == Street::Flop ? "FLOP" : s == Street::Turn ? "TURN" : "RIVER";
    o << "*** " << name << " *** ";
    if (!before.empty()) o << "[" << join(before) << "] ";
    o << "[" << join(now) << "]\n";
  };

  auto emit_uncalled = [&](Street s) {
    for (const auto& u : r.uncalled)
      if (u.street == s) o << "Uncalled bet (" << cash(u.amount) << ") returned to " << u.player << "\n";
  };

  int blind_posts = static_cast<int>(std::count_if(
      r.actions.begin(), r.actions.end(), [](const ActionEvent& a) { return a.kind == ActionKind::PostBlind; }));
  int posts_seen = 0;
  Street current = Street::Preflop;
  bool hole_header = false;
  auto open_street = [&](Street s) {
    while (current < s) {
      emit_uncalled(current);
      current = static_cast<Street>(static_cast<int>(current) + 1);
      contrib.clear();
      street_max = Money{};
      if (current == Street::Showdown) {
        o << "*** SHOW DOWN ***\n";
      } else {
        bool dealt = std::any_of(r.board.begin(), r.board.end(), [&](const BoardCard& b) { return b.street == current; });
        if (dealt) board_line(current);
      }
    }
  };
  auto ensure_hole_header = [&] {
    if (hole_header) return;
    hole_header = true;
    o << "*** HOLE CARDS ***\n";
    for (const auto& s : r.seats) {
      auto it = r.hole_cards.find(s.player_name);
      if (it != r.hole_cards.end() && !shown.count(s.player_name))
        o << "Dealt to " << s.player_name << " [" << format_card(it->second[0]) << " " << format_card(it->second[1])
          << "]\n";
    }
  };

  for (const auto& a : r.actions) {
    if (a.kind != ActionKind::PostBlind) ensure_hole_header();
    open_street(a.street);
    const std::string& p = a.actor;
    o << p << ": ";
    switch (a.kind) {
      case ActionKind::PostBlind: {
        bool small = posts_seen++ == 0 && blind_posts > 1;
        o << (small ? "posts small blind " : "posts big blind ") << cash(a.amount);
        contrib[p] += a.amount;
        stack[p] -= a.amount;
        if (stack[p].is_zero()) o << " and is all-in";
        break;
      }
      case ActionKind::Fold:
        o << "folds";
        break;
      case ActionKind::Check:
        o << "checks";
        break;
      case ActionKind::Call:
        o << "calls " << cash(a.amount);
        contrib[p] += a.amount;
        stack[p] -= a.amount;
        break;
      case ActionKind::Bet:
        o << "bets " << cash(a.amount);
        contrib[p] += a.amount;
        stack[p] -= a.amount;
        break;
      case ActionKind::Raise:
        o << "raises " << cash(a.amount) << " to " << cash(*a.raise_to);
        stack[p] -= *a.raise_to - contrib[p];
        contrib[p] = *a.raise_to;
        break;
      case ActionKind::AllIn: {
        Money target = contrib[p] + a.amount;
        if (target <= street_max) o << "calls " << cash(a.amount);
        else if (street_max.is_zero()) o << "bets " << cash(a.amount);
        else o << "raises " << cash(target - street_max) << " to " << cash(target);
        o << " and is all-in";
        contrib[p] = target;
        stack[p] -= a.amount;
        break;
      }
      case ActionKind::Show: {
        const auto& h = r.hole_cards.at(p);
        o << "shows [" << format_card(h[0]) << " " << format_card(h[1]) << "]";
        if (auto it = r.shown_ranks.find(p); it != r.shown_ranks.end()) o << " (" << describe(it->second) << ")";
        break;
      }
    }
    o << "\n";
    if (contrib.count(p)) street_max = std::max(street_max, contrib[p]);
  }
  ensure_hole_header();
  // Board cards dealt after the last action (all-in run-outs).
  Street last_board = r.board.empty() ? Street::Preflop : r.board.back().street;
  open_street(last_board);
  if (!r.mucked.empty()) {
    open_street(Street::Showdown);
    for (const auto& m : r.mucked) o << m << ": mucks hand\n";
  }
  emit_uncalled(current);
  for (const auto& c : r.collections) o << c.player << " collected " << cash(c.amount) << " from " << c.pot << "\n";

  o << "*** SUMMARY ***\n";
  o << "Total pot " << cash(r.pot_total) << " | Rake " << cash(r.rake) << "\n";
  if (!r.board.empty()) {
    o << "Board [";
    for (std::size_t i = 0; i < r.board.size(); ++i) o << (i ? " " : "") << format_card(r.board[i].card);
    o << "]\n";
  }
  std::map<std::string, Money> won;
  for (const auto& c : r.collections) won[c.player] += c.amount;
  for (const auto& s : r.seats) {
    const std::string& p = s.player_name;
    o << "Seat " << s.seat_no << ": " << p;
    if (s.seat_no == r.dealer_seat) o << " (button)";
    auto fold = std::find_if(r.actions.begin(), r.actions.end(),
                             [&](const ActionEvent& a) { return a.actor == p && a.kind == ActionKind::Fold; });
    if (fold != r.actions.end()) {
      o << (fold->street == Street::Preflop ? " folded before Flop" : " folded on the " +
                                                                          std::string(fold->street == Street::Flop   ? "Flop"
                                                                                      : fold->street == Street::Turn ? "Turn"
                                                                                                                     : "River"));
    } else if (shown.count(p)) {
      const auto& h = r.hole_cards.at(p);
      o << " showed [" << format_card(h[0]) << " " << format_card(h[1]) << "]";
      if (won.count(p)) o << " and won (" << cash(won[p]) << ")";
      else o << " and lost";
    } else if (std::find(r.mucked.begin(), r.mucked.end(), p) != r.mucked.end()) {
      o << " mucked";
    } else if (won.count(p)) {
      o << " collected (" << cash(won[p]) << ")";
    }
    o << "\n";
  }
  return o.str();
}

// --- JSON -----------------------------------------------------------------

namespace {

nlohmann::json cards_json(const std::vector<Card>& cards) {
  auto arr = nlohmann::json::array();
  for (Card c : cards) arr.push_back(format_card(c));
  return arr;
}

Card card_json(const nlohmann::json& j) { return parse_card(j.get<std::string>()); }

}  // namespace

nlohmann::json hand_to_json(const HandRecord& r, std::string_view raw_text) {
  using nlohmann::json;
  json j;
  j["schema"] = kHandRecordSchema;
  j["hand_id"] = r.hand_id;
  j["table_name"] = r.table_name;
  j["max_seats"] = r.max_seats;
  j["timestamp"] = r.timestamp;
  j["blinds"] = {{"small_blind", r.blinds.small_blind.minor()},
                 {"big_blind", r.blinds.big_blind.minor()},
                 {"currency", r.blinds.currency}};
  j["dealer_seat"] = r.dealer_seat;
  j["seats"] = json::array();
  for (const auto& s : r.seats)
    j["seats"].push_back({{"seat_no", s.seat_no}, {"player", s.player_name}, {"starting_stack", s.starting_stack.minor()}});
  j["hole_cards"] = json::object();
  for (const auto& [p, h] : r.hole_cards) j["hole_cards"][p] = cards_json({h[0], h[1]});
  j["board"] = json::array();
  for (const auto& b : r.board) j["board"].push_back({{"card", format_card(b.card)}, {"street", street_name(b.street)}});
  j["actions"] = json::array();
  for (const auto& a : r.actions) {
    json e = {{"street", street_name(a.street)},
              {"actor", a.actor},
              {"kind", action_kind_name(a.kind)},
              {"amount", a.amount.minor()}};
    if (a.raise_to) e["raise_to"] = a.raise_to->minor();
    j["actions"].push_back(std::move(e));
  }
  j["uncalled"] = json::array();
  for (const auto& u : r.uncalled)
    j["uncalled"].push_back({{"player", u.player}, {"amount", u.amount.minor()}, {"street", street_name(u.street)}});
  j["collections"] = json::array();
  for (const auto& c : r.collections)
    j["collections"].push_back({{"player", c.player}, {"amount", c.amount.minor()}, {"pot", c.pot}});
  j["mucked"] = r.mucked;
  j["pot_total"] = r.pot_total.minor();
  j["rake"] = r.rake.minor();
  j["results"] = json::object();
  for (const auto& [p, m] : r.results) j["results"][p] = m.minor();
  j["shown_ranks"] = json::object();
  for (const auto& [p, c] : r.shown_ranks) j["shown_ranks"][p] = category_name(c);
  if (!raw_text.empty()) j["raw"] = raw_text;
  return j;
}

HandRecord hand_from_json(const nlohmann::json& j) {
  if (j.value("schema", std::string{}) != kHandRecordSchema)
    throw std::runtime_error("unsupported hand record schema '" + j.value("schema", std::string{}) + "'");
  auto money = [](const nlohmann::json& v) { return Money::from_minor(v.get<std::int64_t>()); };
  auto street = [](const nlohmann::json& v) {
    auto s = street_from_name(v.get<std::string>());
    if (!s) throw std::runtime_error("unknown street " + v.get<std::string>());
    return *s;
  };
  HandRecord r;
  r.hand_id = j.at("hand_id").get<std::string>();
  r.table_name = j.value("table_name", std::string{});
  r.max_seats = j.value("max_seats", 0);
  r.timestamp = j.value("timestamp", std::string{});
  const auto& b = j.at("blinds");
  r.blinds.small_blind = money(b.at("small_blind"));
  r.blinds.big_blind = money(b.at("big_blind"));
  r.blinds.currency = b.value("currency", std::string("USD"));
  r.dealer_seat = j.at("dealer_seat").get<int>();
  for (const auto& s : j.at("seats"))
    r.seats.push_back({s.at("seat_no").get<int>(), s.at("player").get<std::string>(), money(s.at("starting_stack"))});
  for (const auto& [p, h] : j.at("hole_cards").items()) r.hole_cards[p] = {card_json(h.at(0)), card_json(h.at(1))};
  for (const auto& bc : j.at("board")) r.board.push_back({card_json(bc.at("card")), street(bc.at("street"))});
  for (const auto& a : j.at("actions")) {
    ActionEvent e;
    e.street = street(a.at("street"));
    e.actor = a.at("actor").get<std::string>();
    auto k = action_kind_from_name(a.at("kind").get<std::string>());
    if (!k) throw std::runtime_error("unknown action kind " + a.at("kind").get<std::string>());
    e.kind = *k;
    e.amount = money(a.at("amount"));
    if (a.contains("raise_to")) e.raise_to = money(a.at("raise_to"));
    r.actions.push_back(std::move(e));
  }
  for (const auto& u : j.value("uncalled", nlohmann::json::array()))
    r.uncalled.push_back({u.at("player").get<std::string>(), money(u.at("amount")), street(u.at("street"))});
  for (const auto& c : j.value("collections", nlohmann::json::array()))
    r.collections.push_back({c.at("player").get<std::string>(), money(c.at("amount")), c.value("pot", std::string("pot"))});
  r.mucked = j.value("mucked", std::vector<std::string>{});
  r.pot_total = money(j.at("pot_total"));
  r.rake = money(j.value("rake", nlohmann::json(0)));
  for (const auto& [p, m] : j.at("results").items()) r.results[p] = money(m);
  const nlohmann::json ranks = j.value("shown_ranks", nlohmann::json::object());
  for (const auto& [p, c] : ranks.items()) {
    auto cat = category_from_name(c.get<std::string>());
    if (!cat) throw std::runtime_error("unknown hand category " + c.get<std::string>());
    r.shown_ranks[p] = *cat;
  }
  return r;
}

std::string raw_text_from_json(const nlohmann::json& j) { return j.value("raw", std::string{}); }

void write_hands_jsonl(const std::filesystem::path& path, const std::vector<ParsedHand>& hands) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& h : hands) out << hand_to_json(h.record, h.raw_text).dump() << "\n";
  if (!out) throw std::runtime_error("error writing " + path.string());
}

std::vector<ParsedHand> read_hands_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<ParsedHand> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      ParsedHand h;
      h.record = hand_from_json(j);
      h.raw_text = raw_text_from_json(j);
      out.push_back(std::move(h));
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace poker
