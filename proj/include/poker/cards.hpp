#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace poker {

enum class Suit : std::uint8_t { Clubs = 0, Diamonds = 1, Hearts = 2, Spades = 3 };

using Rank = std::uint8_t;  // 2..14, T=10 J=11 Q=12 K=13 A=14

struct Card {
  Rank rank = 2;
  Suit suit = Suit::Clubs;

  // Dense index in [0, 52): (rank - 2) * 4 + suit.
  constexpr int index() const { return (rank - 2) * 4 + static_cast<int>(suit); }
  static constexpr Card from_index(int i) {
    return Card{static_cast<Rank>(i / 4 + 2), static_cast<Suit>(i % 4)};
  }

  friend constexpr bool operator==(Card, Card) = default;
  friend constexpr auto operator<=>(const Card& a, const Card& b) { return a.index() <=> b.index(); }
};

class CardError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two characters, rank in {2..9,T,J,Q,K,A}, suit in {c,d,h,s}.
Card parse_card(std::string_view text);
std::string format_card(Card c);
char rank_char(Rank r);

// Placeholder token for a card that is not visible.
inline constexpr std::string_view kHiddenCard = "**";

std::vector<Card> full_deck();

// Ordered as the strength ladder, weakest first.
enum class HandCategory : std::uint8_t {
  HighCard,
  OnePair,
  TwoPair,
  ThreeOfAKind,
  Straight,
  Flush,
  FullHouse,
  FourOfAKind,
  StraightFlush,
  RoyalFlush,
};

// Name used in prompts ("High", "Flush", ...).
std::string_view category_name(HandCategory c);
std::optional<HandCategory> category_from_name(std::string_view name);

class HandValue {
 public:
  HandValue() = default;
  HandValue(HandCategory category, std::span<const Rank> tiebreaks);

  HandCategory category() const { return category_; }
  std::span<const Rank> tiebreaks() const { return {ranks_.data(), count_}; }
  std::vector<int> tiebreak_list() const;

  // Packs category and tiebreaks into one integer with the same ordering.
  std::uint32_t key() const;

  friend bool operator==(const HandValue& a, const HandValue& b) { return a.key() == b.key(); }
  friend std::strong_ordering operator<=>(const HandValue& a, const HandValue& b) {
    return a.key() <=> b.key();
  }

  std::string to_string() const;

 private:
  HandCategory category_ = HandCategory::HighCard;
  std::array<Rank, 5> ranks_{};
  std::uint8_t count_ = 0;
};

std::strong_ordering compare(const HandValue& a, const HandValue& b);

// Best five-card value from 5..7 cards; with fewer than five cards the made
// groups and high cards of what is there. No validation.
HandValue evaluate_cards(std::span<const Card> cards);

// Validated entry point: two hole cards, board of 0, 3, 4 or 5 cards, all distinct.
HandValue evaluate_best(std::span<const Card> hole, std::span<const Card> board);

struct HoleCharacteristics {
  bool suit = false;
  bool high = false;
  bool close = false;

  // Subset of {"suit", "high", "close"} in that order.
  std::vector<std::string> names() const;
  friend bool operator==(const HoleCharacteristics&, const HoleCharacteristics&) = default;
};

HoleCharacteristics hole_characteristics(Card a, Card b);

// 64-bit membership set over card indices.
class CardSet {
 public:
  bool contains(Card c) const { return (bits_ >> c.index()) & 1U; }
  // Returns false when already present.
  bool insert(Card c) {
    if (contains(c)) return false;
    bits_ |= (std::uint64_t{1} << c.index());
    return true;
  }
  std::uint64_t bits() const { return bits_; }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace poker
