#include <doctest.h>

#include "hands.hpp"
#include "poker/eval_metrics.hpp"

using namespace poker;
using A = ActionClass;
using hands::c;

namespace {

constexpr std::array<A, 5> kAll = {A::Check, A::Call, A::Fold, A::Bet, A::Raise};

GameTranscript game(std::vector<A> actions, int streets, std::int64_t invested_minor = 0) {
  GameTranscript g;
  g.actions = std::move(actions);
  g.streets_reached = streets;
  g.invested = c(invested_minor);
  g.big_blind = c(2);
  return g;
}

// Per-class F1 from a truth-by-prediction matrix, averaged over classes.
double oracle_macro_f1(const ConfusionMatrix& m) {
  double sum = 0;
  for (int k = 0; k < kNumActionClasses; ++k) {
    double tp = static_cast<double>(m[k][k]);
    double row = 0, col = 0;
    for (int j = 0; j < kNumActionClasses; ++j) {
      row += static_cast<double>(m[k][j]);
      col += static_cast<double>(m[j][k]);
    }
    double p = col > 0 ? tp / col : 0, r = row > 0 ? tp / row : 0;
    sum += p + r > 0 ? 2 * p * r / (p + r) : 0;
  }
  return sum / kNumActionClasses;
}

}  // namespace

TEST_CASE("macro F1") {
  std::vector<A> all(kAll.begin(), kAll.end());
  CHECK(macro_f1(all, all) == 1.0);
  std::vector<A> truth = {A::Check, A::Call}, pred = {A::Check, A::Fold};
  CHECK(macro_f1(pred, truth) == 0.2);
  auto per = per_class_f1(pred, truth);
  CHECK(per[0] == 1.0);
  CHECK(per[1] == 0.0);
  std::vector<A> shorter = {A::Check};
  CHECK_THROWS(macro_f1(shorter, truth));
}

TEST_CASE("macro F1 on a test set with the reference class counts") {
  // Rows are truth counts 1576/2130/558/329/183 spread over predictions.
  const ConfusionMatrix stated = {{{1201, 250, 60, 50, 15},
                                   {300, 1620, 110, 40, 60},
                                   {70, 120, 350, 10, 8},
                                   {40, 50, 9, 210, 20},
                                   {12, 30, 6, 25, 110}}};
  std::vector<A> pred, truth;
  for (int t = 0; t < 5; ++t)
    for (int p = 0; p < 5; ++p)
      for (std::int64_t n = 0; n < stated[t][p]; ++n) {
        truth.push_back(kAll[t]);
        pred.push_back(kAll[p]);
      }
  std::array<std::int64_t, 5> rows{};
  for (A a : truth) ++rows[static_cast<int>(a)];
  CHECK(rows == std::array<std::int64_t, 5>{1576, 2130, 558, 329, 183});
  CHECK(confusion_matrix(pred, truth) == stated);
  CHECK(macro_f1(pred, truth) == doctest::Approx(oracle_macro_f1(stated)).epsilon(1e-12));
}

TEST_CASE("confusion matrix") {
  std::vector<A> all(kAll.begin(), kAll.end());
  ConfusionMatrix m = confusion_matrix(all, all);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(m[i][j] == (i == j ? 1 : 0));
  std::vector<A> t = {A::Fold}, p = {A::Call};
  ConfusionMatrix one = confusion_matrix(p, t);
  CHECK(one[static_cast<int>(A::Fold)][static_cast<int>(A::Call)] == 1);
}

TEST_CASE("amount MSE in big blinds") {
  Money bb = c(5);
  std::vector<Money> a = {c(5), c(30)}, b = {c(15), c(30)};
  CHECK(amount_mse_bb(a, a, bb) == Rational(0));
  std::vector<Money> p1 = {c(15)}, t1 = {c(5)};
  CHECK(amount_mse_bb(p1, t1, bb) == Rational(4));
  CHECK(amount_mse_bb(a, b, bb) == Rational(2));
}

TEST_CASE("amount MSE over matching value actions only") {
  Money bb = c(5);
  std::vector<A> pc = {A::Bet, A::Raise, A::Call, A::Bet};
  std::vector<A> tc = {A::Bet, A::Raise, A::Call, A::Raise};
  std::vector<Money> pa = {c(5), c(30), c(10), c(50)};
  std::vector<Money> ta = {c(15), c(30), c(99), c(5)};
  ValueMse v = value_amount_mse_bb(pc, pa, tc, ta, bb);
  CHECK(v.pairs == 2);
  CHECK(*v.mse == Rational(2));
  std::vector<A> none = {A::Call};
  std::vector<Money> z = {c(0)};
  CHECK_FALSE(value_amount_mse_bb(none, z, none, z, bb).mse.has_value());
}

TEST_CASE("perplexity") {
  std::vector<double> sure = {1, 1, 1}, half = {0.5, 0.5}, mixed = {0.25, 1.0};
  CHECK(perplexity(sure) == 1.0);
  CHECK(perplexity(half) == 2.0);
  CHECK(perplexity(mixed) == doctest::Approx(2.0).epsilon(1e-12));
  std::vector<double> bad = {0.0}, over = {1.5};
  CHECK_THROWS(perplexity(bad));
  CHECK_THROWS(perplexity(over));
  CHECK_THROWS(perplexity({}));
}

TEST_CASE("action scores") {
  std::vector<GameTranscript> one = {game({A::Check, A::Check, A::Check, A::Fold}, 3)};
  auto s = action_scores(one);
  CHECK(s[A::Check] == 1.0);
  CHECK(s[A::Fold] == doctest::Approx(0.33).epsilon(0.005 / 0.33));

  std::vector<GameTranscript> instant = {game({A::Fold}, 1)};
  auto f = action_scores(instant);
  CHECK(f[A::Fold] == 1.0);
  CHECK(f[A::Check] == 0.0);
  CHECK(f[A::Raise] == 0.0);

  std::vector<GameTranscript> pair = {game({A::Call, A::Call}, 4), game({A::Call}, 1)};
  auto m = action_scores(pair);
  CHECK(m[A::Call] == doctest::Approx((0.5 + 1.0) / 2));
}

TEST_CASE("average investment") {
  std::vector<GameTranscript> checks = {game({A::Check, A::Check}, 4, 2)};
  CHECK(average_investment(checks) == Rational(1));
  std::vector<GameTranscript> ten = {game({A::Bet}, 1, 20)};
  CHECK(average_investment(ten) == Rational(10));
  std::vector<GameTranscript> two = {game({A::Call}, 1, 4), game({A::Call}, 1, 36)};
  CHECK(average_investment(two) == Rational(10));
}

TEST_CASE("mbb per hand") {
  std::vector<Rational> five(10, Rational(1, 2));
  CHECK(mbb_per_hand(five).mean == Rational(500));
  std::vector<Rational> zeros(4, Rational(0));
  auto z = mbb_per_hand(zeros);
  CHECK(z.mean == Rational(0));
  CHECK(z.stddev == 0.0);
  std::vector<Rational> pm = {Rational(1), Rational(-1)};
  auto r = mbb_per_hand(pm);
  CHECK(r.mean == Rational(0));
  // Standard error: 1000 * sample std (sqrt 2) / sqrt 2.
  CHECK(r.stddev == doctest::Approx(1000.0));
}

TEST_CASE("transcripts from recorded hands") {
  HandRecord r = hands::showdown_hand();
  GameTranscript p1 = transcript_for(r, "P1");
  CHECK(p1.actions.front() == A::Call);
  CHECK(p1.streets_reached == 4);
  CHECK(p1.invested == c(2));
  GameTranscript bb = transcript_for(r, "P3");
  CHECK(bb.invested == c(2));
  CHECK(bb.actions.front() == A::Check);
}
