#include "poker/cards.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

namespace poker {

namespace {

constexpr std::string_view kRankChars = "23456789TJQKA";
constexpr std::string_view kSuitChars = "cdhs";

// Highest rank of a five-long run in a rank bitmask (bit r set for rank r, bit 1
// doubling as the ace for the wheel), or 0.
int straight_high(std::uint32_t mask) {
  if (mask & (1U << 14)) mask |= 1U << 1;
  for (int high = 14; high >= 5; --high) {
    std::uint32_t run = 0x1FU << (high - 4);
    if ((mask & run) == run) return high;
  }
  return 0;
}

struct RankBuf {
  std::array<Rank, 5> ranks{};
  std::size_t size = 0;
  void push_back(Rank r) { ranks[size++] = r; }
  operator std::span<const Rank>() const { return {ranks.data(), size}; }  // NOLINT
};

// Appends up to n ranks from the mask, highest first.
void take_high(std::uint32_t mask, int n, RankBuf& out) {
  for (int r = 14; r >= 2 && n > 0; --r) {
    if (mask & (1U << r)) {
      out.push_back(static_cast<Rank>(r));
      --n;
    }
  }
}

}  // namespace

char rank_char(Rank r) { return kRankChars.at(r - 2); }

Card parse_card(std::string_view text) {
  if (text.size() != 2) throw CardError("malformed card '" + std::string(text) + "'");
  auto r = kRankChars.find(text[0]);
  auto s = kSuitChars.find(text[1]);
  if (r == std::string_view::npos || s == std::string_view::npos)
    throw CardError("malformed card '" + std::string(text) + "'");
  return Card{static_cast<Rank>(r + 2), static_cast<Suit>(s)};
}

std::string format_card(Card c) {
  return {rank_char(c.rank), kSuitChars[static_cast<int>(c.suit)]};
}

std::vector<Card> full_deck() {
  std::vector<Card> deck;
  deck.reserve(52);
  for (int i = 0; i < 52; ++i) deck.push_back(Card::from_index(i));
  return deck;
}

std::string_view category_name(HandCategory c) {
  switch (c) {
    case HandCategory::HighCard: return "High";
    case HandCategory::OnePair: return "One Pair";
    case HandCategory::TwoPair: return "Two Pair";
    case HandCategory::ThreeOfAKind: return "Three of a Kind";
    case HandCategory::Straight: return "Straight";
    case HandCategory::Flush: return "Flush";
    case HandCategory::FullHouse: return "Full House";
    case HandCategory::FourOfAKind: return "Four of a Kind";
    case HandCategory::StraightFlush: return "Straight Flush";
    case HandCategory::RoyalFlush: return "Royal Flush";
  }
  return "High";
}

std::optional<HandCategory> category_from_name(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(HandCategory::RoyalFlush); ++i) {
    auto c = static_cast<HandCategory>(i);
    if (category_name(c) == name) return c;
  }
  return std::nullopt;
}

HandValue::HandValue(HandCategory category, std::span<const Rank> tiebreaks)
    : category_(category), count_(static_cast<std::uint8_t>(std::min<std::size_t>(tiebreaks.size(), 5))) {
  std::copy_n(tiebreaks.begin(), count_, ranks_.begin());
}

std::vector<int> HandValue::tiebreak_list() const {
  return {ranks_.begin(), ranks_.begin() + count_};
}

std::uint32_t HandValue::key() const {
  std::uint32_t k = static_cast<std::uint32_t>(category_);
  for (int i = 0; i < 5; ++i) k = (k << 4) | (i < count_ ? ranks_[i] : 0U);
  return k;
}

std::string HandValue::to_string() const {
  std::string s(category_name(category_));
  s += " [";
  for (int i = 0; i < count_; ++i) {
    if (i) s += ",";
    s += std::to_string(ranks_[i]);
  }
  s += "]";
  return s;
}

std::strong_ordering compare(const HandValue& a, const HandValue& b) { return a <=> b; }

HandValue evaluate_cards(std::span<const Card> cards) {
  std::array<int, 15> count{};
  std::array<std::uint32_t, 4> suit_mask{};
  std::uint32_t rank_mask = 0;
  for (Card c : cards) {
    ++count[c.rank];
    suit_mask[static_cast<int>(c.suit)] |= 1U << c.rank;
    rank_mask |= 1U << c.rank;
  }

  RankBuf tb;

  for (std::uint32_t m : suit_mask) {
    if (std::popcount(m) >= 5) {
      if (int high = straight_high(m)) {
        tb.push_back(static_cast<Rank>(high));
        return {high == 14 ? HandCategory::RoyalFlush : HandCategory::StraightFlush, tb};
      }
    }
  }

  std::uint32_t quads = 0, trips = 0, pairs = 0;
  for (int r = 2; r <= 14; ++r) {
    if (count[r] == 4) quads |= 1U << r;
    else if (count[r] == 3) trips |= 1U << r;
    else if (count[r] == 2) pairs |= 1U << r;
  }
  auto top = [](std::uint32_t m) { return 31 - std::countl_zero(m); };

  if (quads) {
    int q = top(quads);
    tb.push_back(static_cast<Rank>(q));
    take_high(rank_mask & ~(1U << q), 1, tb);
    return {HandCategory::FourOfAKind, tb};
  }
  if (trips) {
    int t = top(trips);
    std::uint32_t rest = (trips & ~(1U << t)) | pairs;
    if (rest) {
      tb.push_back(static_cast<Rank>(t));
      tb.push_back(static_cast<Rank>(top(rest)));
      return {HandCategory::FullHouse, tb};
    }
  }
  for (std::uint32_t m : suit_mask) {
    if (std::popcount(m) >= 5) {
      take_high(m, 5, tb);
      return {HandCategory::Flush, tb};
    }
  }
  if (int high = straight_high(rank_mask)) {
    tb.push_back(static_cast<Rank>(high));
    return {HandCategory::Straight, tb};
  }
  if (trips) {
    int t = top(trips);
    tb.push_back(static_cast<Rank>(t));
    take_high(rank_mask & ~(1U << t), 2, tb);
    return {HandCategory::ThreeOfAKind, tb};
  }
  if (std::popcount(pairs) >= 2) {
    int hi = top(pairs);
    int lo = top(pairs & ~(1U << hi));
    tb.push_back(static_cast<Rank>(hi));
    tb.push_back(static_cast<Rank>(lo));
    take_high(rank_mask & ~(1U << hi) & ~(1U << lo), 1, tb);
    return {HandCategory::TwoPair, tb};
  }
  if (pairs) {
    int p = top(pairs);
    tb.push_back(static_cast<Rank>(p));
    take_high(rank_mask & ~(1U << p), 3, tb);
    return {HandCategory::OnePair, tb};
  }
  take_high(rank_mask, 5, tb);
  return {HandCategory::HighCard, tb};
}

HandValue evaluate_best(std::span<const Card> hole, std::span<const Card> board) {
  if (hole.size() != 2) throw CardError("expected 2 hole cards, got " + std::to_string(hole.size()));
  if (board.size() != 0 && board.size() != 3 && board.size() != 4 && board.size() != 5)
    throw CardError("board must have 0, 3, 4 or 5 cards, got " + std::to_string(board.size()));
  std::array<Card, 7> all{};
  CardSet seen;
  std::size_t n = 0;
  for (auto part : {hole, board}) {
    for (Card c : part) {
      if (!seen.insert(c)) throw CardError("duplicate card " + format_card(c));
      all[n++] = c;
    }
  }
  return evaluate_cards(std::span<const Card>(all.data(), n));
}

std::vector<std::string> HoleCharacteristics::names() const {
  std::vector<std::string> out;
  if (suit) out.emplace_back("suit");
  if (high) out.emplace_back("high");
  if (close) out.emplace_back("close");
  return out;
}

HoleCharacteristics hole_characteristics(Card a, Card b) {
  if (a == b) throw CardError("hole cards must be distinct");
  HoleCharacteristics h;
  h.suit = a.suit == b.suit;
  h.high = std::max(a.rank, b.rank) > 9;
  h.close = std::abs(static_cast<int>(a.rank) - static_cast<int>(b.rank)) < 5;
  return h;
}

}  // namespace poker
