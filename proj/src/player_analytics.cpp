#include "poker/player_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "poker/hand_history.hpp"

namespace poker {

Rational hand_delta_bb(const HandRecord& record, std::string_view player) {
  if (!record.seat_of(player)) throw std::invalid_argument("player " + std::string(player) + " not in hand " + record.hand_id);
  auto it = record.results.find(std::string(player));
  Money delta = it == record.results.end() ? Money{} : it->second;
  return Rational(delta.minor(), record.blinds.big_blind.minor());
}

WinRate win_rate(std::span<const Rational> deltas_bb) {
  WinRate w;
  if (deltas_bb.empty()) return w;
  Rational sum;
  for (const auto& d : deltas_bb) sum += d;
  auto n = static_cast<std::int64_t>(deltas_bb.size());
  w.mbb_h = sum * Rational(1000) / Rational(n);
  if (n > 1) {
    double mean = sum.to_double() * 1000.0 / static_cast<double>(n);
    double ss = 0;
    for (const auto& d : deltas_bb) {
      double x = d.to_double() * 1000.0 - mean;
      ss += x * x;
    }
    w.stddev = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
  }
  return w;
}

std::map<std::string, PlayerStats> compute_stats(std::span<const HandRecord> corpus) {
  std::map<std::string, PlayerStats> out;
  for (const auto& r : corpus) {
    for (const auto& s : r.seats) {
      auto& st = out[s.player_name];
      st.player_name = s.player_name;
      st.per_hand_deltas_bb.push_back(hand_delta_bb(r, s.player_name));
    }
  }
  for (auto& [name, st] : out) {
    st.hands_played = static_cast<int>(st.per_hand_deltas_bb.size());
    st.net_bb = Rational{};
    for (const auto& d : st.per_hand_deltas_bb) st.net_bb += d;
    WinRate w = win_rate(st.per_hand_deltas_bb);
    st.win_rate_mbb_h = w.mbb_h;
    st.stddev_mbb_h = w.stddev;
  }
  return out;
}

std::vector<PlayerStats> rank_players(const std::map<std::string, PlayerStats>& stats, int min_hands) {
  std::vector<PlayerStats> out;
  for (const auto& [name, st] : stats)
    if (st.hands_played >= min_hands) out.push_back(st);
  std::sort(out.begin(), out.end(), [](const PlayerStats& a, const PlayerStats& b) {
    if (a.win_rate_mbb_h != b.win_rate_mbb_h) return a.win_rate_mbb_h > b.win_rate_mbb_h;
    if (a.hands_played != b.hands_played) return a.hands_played > b.hands_played;
    return a.player_name < b.player_name;
  });
  return out;
}

bool WinRateBand::contains(const Rational& x) const {
  if (lower && (lower_inclusive ? x < *lower : x <= *lower)) return false;
  if (upper && (upper_inclusive ? x > *upper : x >= *upper)) return false;
  return true;
}

std::string WinRateBand::to_string() const {
  std::string s = lower ? (lower_inclusive ? "[" : "(") + lower->to_string() : "(-inf";
  s += ", ";
  s += upper ? upper->to_string() + (upper_inclusive ? "]" : ")") : "inf)";
  return s;
}

WinRateBand WinRateBand::above(Rational lo, std::string label) {
  WinRateBand b;
  b.lower = lo;
  b.label = std::move(label);
  return b;
}

WinRateBand WinRateBand::below(Rational hi, std::string label) {
  WinRateBand b;
  b.upper = hi;
  b.label = std::move(label);
  return b;
}

WinRateBand WinRateBand::closed(Rational lo, Rational hi, std::string label) {
  if (!(lo < hi)) throw std::invalid_argument("band lower bound must be below the upper bound");
  WinRateBand b;
  b.lower = lo;
  b.lower_inclusive = true;
  b.upper = hi;
  b.upper_inclusive = true;
  b.label = std::move(label);
  return b;
}

WinRateBand WinRateBand::all(std::string label) {
  WinRateBand b;
  b.label = std::move(label);
  return b;
}

WinRateBand WinRateBand::dataset(std::string_view name) {
  if (name == "III") return above(1500, "III");
  if (name == "IV") return closed(600, 1200, "IV");
  if (name == "V") return closed(0, 500, "V");
  if (name == "VI") return below(0, "VI");
  throw std::invalid_argument("unknown win-rate dataset " + std::string(name) + " (III, IV, V, VI)");
}

std::vector<TaggedHand> partition_hands(std::span<const HandRecord> corpus, const WinRateBand& band,
                                        const std::map<std::string, PlayerStats>& stats, int min_hands) {
  std::vector<TaggedHand> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const HandRecord& r = corpus[i];
    if (!has_revealed_showdown(r)) continue;
    TaggedHand t;
    t.index = i;
    for (const auto& s : r.seats) {
      if (!r.hole_cards.count(s.player_name)) continue;
      auto it = stats.find(s.player_name);
      if (it == stats.end() || it->second.hands_played < min_hands) continue;
      if (band.contains(it->second.win_rate_mbb_h)) t.heroes.push_back(s.player_name);
    }
    if (!t.heroes.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::vector<HistogramBin> revenue_histogram(std::span<const double> deltas_bb, std::span<const double> edges) {
  if (edges.size() < 2) throw std::invalid_argument("histogram needs at least two edges");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i - 1] < edges[i])) throw std::invalid_argument("histogram edges must increase");
  std::vector<HistogramBin> bins;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) bins.push_back({edges[i], edges[i + 1], 0});
  for (double d : deltas_bb) {
    auto it = std::upper_bound(edges.begin(), edges.end(), d);
    std::ptrdiff_t idx = (it - edges.begin()) - 1;
    idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(bins.size()) - 1);
    ++bins[static_cast<std::size_t>(idx)].count;
  }
  return bins;
}

std::vector<double> uniform_edges(double lo, double hi, int bins) {
  if (bins < 1 || !(lo < hi)) throw std::invalid_argument("bad histogram range");
  std::vector<double> e;
  for (int i = 0; i <= bins; ++i) e.push_back(lo + (hi - lo) * i / bins);
  return e;
}

std::map<Street, std::vector<double>> staged_deltas(std::span<const HandRecord> corpus,
                                                    const std::set<std::string>& players) {
  std::map<Street, std::vector<double>> out;
  for (const auto& r : corpus) {
    for (const auto& s : r.seats) {
      if (!players.count(s.player_name)) continue;
      Street end = r.final_street();
      for (const auto& a : r.actions)
        if (a.actor == s.player_name && a.kind == ActionKind::Fold) end = a.street;
      out[end].push_back(hand_delta_bb(r, s.player_name).to_double());
    }
  }
  return out;
}

}  // namespace poker
