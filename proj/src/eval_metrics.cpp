#include "poker/eval_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "poker/player_analytics.hpp"

namespace poker {

namespace {

void check_pair(std::span<const ActionClass> pred, std::span<const ActionClass> truth) {
  if (pred.size() != truth.size()) throw std::invalid_argument("prediction and truth lengths differ");
  if (pred.empty()) throw std::invalid_argument("no samples");
}

}  // namespace

ConfusionMatrix confusion_matrix(std::span<const ActionClass> pred, std::span<const ActionClass> truth) {
  if (pred.size() != truth.size()) throw std::invalid_argument("prediction and truth lengths differ");
  ConfusionMatrix m{};
  for (std::size_t i = 0; i < pred.size(); ++i)
    ++m[static_cast<std::size_t>(truth[i])][static_cast<std::size_t>(pred[i])];
  return m;
}

std::array<double, kNumActionClasses> per_class_f1(std::span<const ActionClass> pred,
                                                   std::span<const ActionClass> truth) {
  check_pair(pred, truth);
  ConfusionMatrix m = confusion_matrix(pred, truth);
  std::array<double, kNumActionClasses> f1{};
  for (int c = 0; c < kNumActionClasses; ++c) {
    std::int64_t tp = m[c][c], fp = 0, fn = 0;
    for (int o = 0; o < kNumActionClasses; ++o) {
      if (o == c) continue;
      fp += m[o][c];
      fn += m[c][o];
    }
    std::int64_t denom = 2 * tp + fp + fn;
    f1[c] = denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
  }
  return f1;
}

double macro_f1(std::span<const ActionClass> pred, std::span<const ActionClass> truth) {
  auto f1 = per_class_f1(pred, truth);
  double sum = 0;
  for (double v : f1) sum += v;
  return sum / kNumActionClasses;
}

Rational amount_mse_bb(std::span<const Money> pred, std::span<const Money> truth, Money big_blind) {
  if (pred.size() != truth.size()) throw std::invalid_argument("prediction and truth lengths differ");
  if (pred.empty()) throw std::invalid_argument("no samples");
  if (big_blind <= Money{}) throw std::invalid_argument("big blind must be positive");
  Rational sum;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    Rational d((pred[i] - truth[i]).minor(), big_blind.minor());
    sum += d * d;
  }
  return sum / Rational(static_cast<std::int64_t>(pred.size()));
}

ValueMse value_amount_mse_bb(std::span<const ActionClass> pred, std::span<const Money> pred_amounts,
                             std::span<const ActionClass> truth, std::span<const Money> truth_amounts,
                             Money big_blind) {
  if (pred.size() != truth.size() || pred.size() != pred_amounts.size() || truth.size() != truth_amounts.size())
    throw std::invalid_argument("prediction and truth lengths differ");
  std::vector<Money> p, t;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] != truth[i]) continue;
    if (pred[i] != ActionClass::Bet && pred[i] != ActionClass::Raise) continue;
    p.push_back(pred_amounts[i]);
    t.push_back(truth_amounts[i]);
  }
  ValueMse out;
  out.pairs = p.size();
  if (!p.empty()) out.mse = amount_mse_bb(p, t, big_blind);
  return out;
}

double perplexity(std::span<const double> token_probs) {
  if (token_probs.empty()) throw std::invalid_argument("no token probabilities");
  double log_sum = 0;
  for (double p : token_probs) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("token probability outside (0, 1]");
    log_sum += std::log(p);
  }
  return std::exp(-log_sum / static_cast<double>(token_probs.size()));
}

std::map<ActionClass, double> action_scores(std::span<const GameTranscript> games) {
  std::map<ActionClass, double> out;
  for (int c = 0; c < kNumActionClasses; ++c) out[static_cast<ActionClass>(c)] = 0.0;
  if (games.empty()) return out;
  for (const auto& g : games) {
    if (g.streets_reached < 1 || g.streets_reached > 4) throw std::invalid_argument("streets reached must be 1..4");
    std::array<int, kNumActionClasses> counts{};
    for (ActionClass a : g.actions) ++counts[static_cast<std::size_t>(a)];
    for (int c = 0; c < kNumActionClasses; ++c)
      out[static_cast<ActionClass>(c)] += std::min(1.0, static_cast<double>(counts[c]) / g.streets_reached);
  }
  for (auto& [k, v] : out) v /= static_cast<double>(games.size());
  return out;
}

Rational average_investment(std::span<const GameTranscript> games) {
  if (games.empty()) return Rational{};
  Rational sum;
  for (const auto& g : games) {
    if (g.big_blind <= Money{}) throw std::invalid_argument("big blind must be positive");
    sum += Rational(g.invested.minor(), g.big_blind.minor());
  }
  return sum / Rational(static_cast<std::int64_t>(games.size()));
}

MbbResult mbb_per_hand(std::span<const Rational> deltas_bb) {
  WinRate w = win_rate(deltas_bb);
  return {w.mbb_h, w.stddev};
}

GameTranscript transcript_for(const HandRecord& record, std::string_view player) {
  if (!record.seat_of(player)) throw std::invalid_argument("player " + std::string(player) + " not in hand");
  GameTranscript g;
  g.big_blind = record.blinds.big_blind;
  g.invested = record.invested(player);
  Street last = Street::Preflop;
  for (const auto& b : record.board) last = std::max(last, b.street);
  for (const auto& a : record.actions)
    if (a.street != Street::Showdown) last = std::max(last, a.street);

  std::map<std::string, Money> contrib;
  Money street_max;
  Street current = Street::Preflop;
  for (const auto& a : record.actions) {
    if (a.street != current) {
      current = a.street;
      contrib.clear();
      street_max = Money{};
    }
    Money before = contrib[a.actor];
    switch (a.kind) {
      case ActionKind::PostBlind:
      case ActionKind::Call:
      case ActionKind::Bet:
      case ActionKind::AllIn:
        contrib[a.actor] += a.amount;
        break;
      case ActionKind::Raise:
        contrib[a.actor] = *a.raise_to;
        break;
      default:
        break;
    }
    if (a.actor == player) {
      switch (a.kind) {
        case ActionKind::Check: g.actions.push_back(ActionClass::Check); break;
        case ActionKind::Call: g.actions.push_back(ActionClass::Call); break;
        case ActionKind::Bet: g.actions.push_back(ActionClass::Bet); break;
        case ActionKind::Raise: g.actions.push_back(ActionClass::Raise); break;
        case ActionKind::Fold:
          g.actions.push_back(ActionClass::Fold);
          last = a.street;
          break;
        case ActionKind::AllIn: {
          Money target = before + a.amount;
          g.actions.push_back(target <= street_max ? ActionClass::Call
                              : street_max.is_zero() ? ActionClass::Bet
                                                     : ActionClass::Raise);
          break;
        }
        default:
          break;
      }
    }
    street_max = std::max(street_max, contrib[a.actor]);
  }
  g.streets_reached = std::min(4, static_cast<int>(last) + 1);
  return g;
}

}  // namespace poker
