#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "poker/hand_record.hpp"
#include "poker/rational.hpp"

namespace poker {

inline constexpr int kDefaultMinHands = 100;

struct PlayerStats {
  std::string player_name;
  int hands_played = 0;
  Rational net_bb;
  Rational win_rate_mbb_h;
  double stddev_mbb_h = 0;  // sample std of per-hand mbb over sqrt(hands)
  std::vector<Rational> per_hand_deltas_bb;
};

// Net result of one hand in big blinds.
Rational hand_delta_bb(const HandRecord& record, std::string_view player);

// Mean in mbb/h and its standard error (sample std / sqrt(n)).
struct WinRate {
  Rational mbb_h;
  double stddev = 0;
};
WinRate win_rate(std::span<const Rational> deltas_bb);

std::map<std::string, PlayerStats> compute_stats(std::span<const HandRecord> corpus);

// Descending by win rate, then hands played, then name.
std::vector<PlayerStats> rank_players(const std::map<std::string, PlayerStats>& stats, int min_hands = kDefaultMinHands);

struct WinRateBand {
  std::optional<Rational> lower;
  bool lower_inclusive = false;
  std::optional<Rational> upper;
  bool upper_inclusive = false;
  std::string label;

  bool contains(const Rational& mbb_h) const;
  std::string to_string() const;

  static WinRateBand above(Rational lo, std::string label = {});   // (lo, inf)
  static WinRateBand below(Rational hi, std::string label = {});   // (-inf, hi)
  static WinRateBand closed(Rational lo, Rational hi, std::string label = {});
  static WinRateBand all(std::string label = "all");

  // The four win-rate datasets: III > 1500, IV 600..1200, V 0..500, VI < 0.
  static WinRateBand dataset(std::string_view name);
};

struct TaggedHand {
  std::size_t index = 0;  // position in the corpus
  std::vector<std::string> heroes;
};

// Showdown-revealed hands with at least one revealed player inside the band;
// players below min_hands are never heroes.
std::vector<TaggedHand> partition_hands(std::span<const HandRecord> corpus, const WinRateBand& band,
                                        const std::map<std::string, PlayerStats>& stats, int min_hands = 0);

struct HistogramBin {
  double lo = 0;
  double hi = 0;
  std::size_t count = 0;
};

// Bins [e_i, e_i+1); the last bin also takes its upper edge. Values outside the
// edges are counted in the nearest end bin.
std::vector<HistogramBin> revenue_histogram(std::span<const double> deltas_bb, std::span<const double> edges);

// Evenly spaced edges from lo to hi.
std::vector<double> uniform_edges(double lo, double hi, int bins);

// Per-hand deltas of the given players grouped by the street where each
// player's hand ended (fold street, otherwise the hand's last street).
std::map<Street, std::vector<double>> staged_deltas(std::span<const HandRecord> corpus,
                                                    const std::set<std::string>& players);

}  // namespace poker
