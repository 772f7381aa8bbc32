#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "lcsfrogs/chain.hpp"
#include "lcsfrogs/error.hpp"
#include "lcsfrogs/signed.hpp"
#include "lcsfrogs/rng.hpp"

using namespace lcsfrogs;

namespace {

SignedState st(int k, std::vector<int> plus, std::vector<int> minus) {
  return make_signed_state(k, plus, minus);
}

std::vector<int> counts(const std::vector<int>& pads, int k) {
  std::vector<int> c(k, 0);
  for (int p : pads) ++c[p];
  return c;
}

// Every start x from which all cyclic partial sums stay positive.
std::vector<int> positive_starts(const SignedState& s) {
  std::vector<int> out;
  for (int x = 0; x < s.k; ++x) {
    int run = 0;
    bool ok = true;
    for (int j = 0; j < s.k && ok; ++j) {
      const int p = (x + j) % s.k;
      run += s.has(Sign::Plus, p) - s.has(Sign::Minus, p);
      ok = run > 0;
    }
    if (ok) out.push_back(x);
  }
  return out;
}

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

LabeledConfig random_config(SplitMix64& rng, int k, int a, int b) {
  LabeledConfig c;
  c.k = k;
  for (;;) {
    c.plus.assign(a, 0);
    c.minus.assign(b, 0);
    for (auto& p : c.plus) p = static_cast<int>(rng.below(k));
    for (auto& p : c.minus) p = static_cast<int>(rng.below(k));
    const int f = static_cast<int>(rng.below(a + b));
    c.focus = f < a ? SignedFrog{Sign::Plus, f} : SignedFrog{Sign::Minus, f - a};
    c.phase = static_cast<Phase>(rng.below(3));
    if (is_member(c)) return c;
  }
}

}  // namespace

TEST(TStep, SharedPadPositiveEndsAtOnce) {
  LabeledConfig c{2, {0}, {0}, {Sign::Plus, 0}, Phase::Begin};
  const auto out = t_step(c);
  EXPECT_EQ(out.plus, c.plus);
  EXPECT_EQ(out.minus, c.minus);
  EXPECT_EQ(out.focus, (SignedFrog{Sign::Minus, 0}));
  EXPECT_EQ(out.phase, Phase::End);
  EXPECT_THROW(t_step(out), Error);
}

TEST(TStep, LoneNegativeAdvances) {
  LabeledConfig c{4, {}, {3}, {Sign::Minus, 0}, Phase::Begin};
  const auto out = t_step(c);
  EXPECT_EQ(out.minus, std::vector<int>{0});
  EXPECT_EQ(out.phase, Phase::End);
}

TEST(TStep, FivePanelTrajectory) {
  // k = 5, four frogs of each sign; the negative frog on pad 0 is poked.
  auto c = lift(st(5, {0, 1, 2, 3}, {0, 1, 3, 4}), {Sign::Minus, 0});
  const std::vector<std::pair<std::vector<int>, std::vector<int>>> panels{
      {{1, 1, 1, 1, 0}, {0, 2, 0, 1, 1}},
      {{1, 1, 1, 1, 0}, {0, 1, 1, 1, 1}},
      {{1, 1, 0, 2, 0}, {0, 1, 1, 1, 1}},
      {{1, 1, 0, 1, 1}, {0, 1, 1, 1, 1}},
  };
  for (std::size_t i = 0; i < panels.size(); ++i) {
    ASSERT_NE(c.phase, Phase::End) << i;
    c = t_step(c);
    EXPECT_EQ(counts(c.plus, 5), panels[i].first) << "panel " << i + 2;
    EXPECT_EQ(counts(c.minus, 5), panels[i].second) << "panel " << i + 2;
    EXPECT_TRUE(is_member(c));
  }
  EXPECT_EQ(c.phase, Phase::End);
  EXPECT_EQ(project(c), st(5, {0, 1, 3, 4}, {1, 2, 3, 4}));
  EXPECT_EQ(poke_signed(st(5, {0, 1, 2, 3}, {0, 1, 3, 4}), {Sign::Minus, 0}),
            st(5, {0, 1, 3, 4}, {1, 2, 3, 4}));
}

TEST(RMap, BeginBecomesEndAndInvolution) {
  SplitMix64 rng(31);
  for (int t = 0; t < 100'000; ++t) {
    const int k = 2 + static_cast<int>(rng.below(5));
    // At most one frog of each sign per pad.
    const auto cap = static_cast<std::uint64_t>(std::min(3, k) + 1);
    const int a = static_cast<int>(rng.below(cap)), b = static_cast<int>(rng.below(cap));
    if (a + b == 0) continue;
    const auto c = random_config(rng, k, a, b);
    const auto r = r_map(c);
    ASSERT_TRUE(is_member(r)) << to_string(c);
    ASSERT_EQ(r_map(r), c) << to_string(c);
    if (c.phase == Phase::Begin) ASSERT_EQ(r.phase, Phase::End);
    if (c.phase == Phase::End) ASSERT_EQ(r.phase, Phase::Begin);
  }
}

TEST(RMap, TransSharedPadSwitchesToPositive) {
  // y = 1+ and z = 2- share pad 1, the arrangement is valid.
  LabeledConfig c{4, {1, 3}, {0, 1}, {Sign::Plus, 0}, Phase::Trans};
  ASSERT_TRUE(is_member(c));
  const auto r = r_map(c);
  EXPECT_EQ(r.focus, (SignedFrog{Sign::Plus, 1}));
  EXPECT_EQ(r.phase, Phase::Trans);
  EXPECT_EQ(r.plus, (std::vector<int>{0, 3}));
  EXPECT_EQ(r.minus, (std::vector<int>{3, 1}));
}

TEST(TimeReversal, ExhaustiveSmallRings) {
  for (int k = 1; k <= 5; ++k)
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) {
        if (a + b == 0) continue;
        const auto rep = check_time_reversal(k, a, b);
        EXPECT_EQ(rep.violations, 0u)
            << "k=" << k << " a=" << a << " b=" << b << " "
            << (rep.first_violation ? to_string(*rep.first_violation) : "");
        if (a <= k && b <= k) EXPECT_GT(rep.checked, 0u) << "k=" << k << " a=" << a << " b=" << b;
      }
}

TEST(RMap, InvolutionOnEnumeratedDomain) {
  const Phase all[] = {Phase::Begin, Phase::Trans, Phase::End};
  for (int k = 1; k <= 4; ++k)
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) {
        if (a + b == 0) continue;
        for (const auto& c : all_configs(k, a, b, all)) ASSERT_EQ(r_map(r_map(c)), c);
      }
}

TEST(SignedChain, DegreeRegular) {
  for (int k = 1; k <= 5; ++k)
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= 2; ++b) {
        if (a + b == 0 || a > k || b > k) continue;
        const auto states = all_signed_states(k, a, b);
        std::map<SignedState, int> in;
        for (const auto& s : states) {
          for (int p : pads_of(s.plus, k)) ++in[poke_signed(s, {Sign::Plus, p})];
          for (int p : pads_of(s.minus, k)) ++in[poke_signed(s, {Sign::Minus, p})];
        }
        for (const auto& s : states) EXPECT_EQ(in[s], a + b) << "k=" << k << " a=" << a << " b=" << b;
      }
}

TEST(PokeSigned, SimpleCases) {
  const auto s = st(4, {1, 2}, {1});
  EXPECT_EQ(poke_signed(s, {Sign::Plus, 1}), s);
  EXPECT_EQ(poke_signed(st(4, {3}, {}), {Sign::Plus, 3}), st(4, {0}, {}));
  EXPECT_THROW(poke_signed(s, {Sign::Minus, 2}), Error);
}

TEST(PokeSigned, IndependentOfLabelling) {
  SplitMix64 rng(32);
  std::mt19937_64 perm(5);
  for (int t = 0; t < 300; ++t) {
    const int k = 2 + static_cast<int>(rng.below(5));
    const int a = 1 + static_cast<int>(rng.below(k)), b = static_cast<int>(rng.below(k + 1));
    const auto states = all_signed_states(k, a, b);
    const auto s = states[rng.below(states.size())];
    auto plus = pads_of(s.plus, k), minus = pads_of(s.minus, k);
    const SignedPad frog = rng.below(a + b) < static_cast<std::uint64_t>(a) || b == 0
                               ? SignedPad{Sign::Plus, plus[rng.below(a)]}
                               : SignedPad{Sign::Minus, minus[rng.below(b)]};
    const auto expect = poke_signed(s, frog);
    for (int r = 0; r < 20; ++r) {
      std::shuffle(plus.begin(), plus.end(), perm);
      std::shuffle(minus.begin(), minus.end(), perm);
      EXPECT_EQ(project(run_to_end(lift(s, frog, plus, minus))), expect);
    }
  }
}

TEST(Optimistic, Examples) {
  EXPECT_EQ(optimistic_frog(st(1, {0}, {})), 0);
  EXPECT_EQ(optimistic_frog(st(3, {0}, {})), 0);
  EXPECT_EQ(optimistic_frog(st(3, {0, 2}, {1})), 2);
  const auto s = st(4, {0, 1, 3}, {2, 3});
  EXPECT_EQ(positive_starts(s), std::vector<int>{optimistic_frog(s)});
  EXPECT_THROW(optimistic_frog(st(3, {0}, {1})), Error);
}

TEST(Optimistic, UniqueForAllSmallStates) {
  for (int k = 1; k <= 6; ++k)
    for (int b = 0; b + 1 <= k; ++b)
      for (const auto& s : all_signed_states(k, b + 1, b)) {
        const auto starts = positive_starts(s);
        ASSERT_EQ(starts.size(), 1u);
        ASSERT_EQ(optimistic_frog(s), starts[0]);
        ASSERT_TRUE(s.has(Sign::Plus, starts[0]));
        ASSERT_FALSE(s.has(Sign::Minus, starts[0]));
      }
}

TEST(Margins, Examples) {
  for (int k = 1; k <= 6; ++k)
    for (int l = 0; l < k; ++l) {
      const std::vector<int> pos{l};
      EXPECT_EQ(margins_formula(k, 0, pos), q(1, k));
      EXPECT_EQ(margins_bruteforce(k, 0, pos), q(1, k));
    }
  EXPECT_EQ(margins_formula(2, 1, std::vector<int>{1, 0}), q(1));
  EXPECT_EQ(margins_formula(4, 1, std::vector<int>{2, 0}), q(1, 3));
  Rational total = 0;
  for (int d = 1; d <= 3; ++d) total += margins_formula(4, 1, std::vector<int>{d, 0});
  EXPECT_EQ(total, 1);
  EXPECT_THROW(margins_formula(4, 1, std::vector<int>{0, 1}), Error);
  EXPECT_THROW(margins_formula(4, 1, std::vector<int>{4, 0}), Error);
  EXPECT_THROW(margins_formula(4, 2, std::vector<int>{2, 0}), Error);
}

TEST(Margins, FormulaMatchesCountingExhaustively) {
  long cases = 0;
  for (int k = 1; k <= 8; ++k)
    for (int m = 0; m <= std::min(3, k - 1); ++m) {
      // l_1 > ... > l_{m+1} = 0 > l_1 - k, then shift the window around.
      for (std::uint64_t mask = 0; mask < (1u << (k - 1)); ++mask) {
        if (std::popcount(mask) != m) continue;
        std::vector<int> l;
        for (int p = k - 1; p >= 1; --p)
          if (mask & (1u << (p - 1))) l.push_back(p);
        l.push_back(0);
        for (int shift = 0; shift < k; ++shift) {
          std::vector<int> moved = l;
          for (auto& x : moved) x += shift;
          ASSERT_EQ(margins_formula(k, m, moved), margins_bruteforce(k, m, moved));
          ++cases;
        }
      }
    }
  EXPECT_GT(cases, 500);
}

TEST(Margins, ConditionalSumsToOne) {
  for (int k = 2; k <= 8; ++k)
    for (int m = 1; m <= std::min(3, k - 1); ++m) {
      std::uint64_t mask = (std::uint64_t{1} << m) - 1;  // frogs 1..m on pads 0..m-1
      Rational total = 0;
      for (int p = m; p < k; ++p) total += margins_formula(k, m, window_positions(k, p, mask));
      EXPECT_EQ(total, 1) << k << " " << m;
    }
}

TEST(Lazy, Threshold) {
  EXPECT_EQ(lazy_probability(5, 2), q(0));
  EXPECT_EQ(lazy_probability(7, 2), q(2, 7));
  EXPECT_EQ(lazy_probability(4, 2), q(0));
  EXPECT_EQ(lazy_probability(10, 1), q(7, 10));
  for (int k = 1; k <= 12; ++k)
    for (int m = 0; m <= k; ++m) {
      const Rational expect = 2 * m + 1 <= k ? q(k - 2 * m - 1, k) : q(0);
      EXPECT_EQ(lazy_probability(k, m), expect);
    }
}

TEST(Coupled, ChainsStayCompatible) {
  for (auto [k, m] : {std::pair{3, 1}, {4, 1}, {5, 2}, {6, 2}, {7, 2}}) {
    const auto r = coupled_run(k, m, 20'000, 1, 1000);
    EXPECT_EQ(r.incompatible_steps, 0u) << k << " " << m;
    EXPECT_EQ(r.steps, 20'000u);
    EXPECT_EQ(r.frog_joint, r.signed_joint);
    if (2 * m + 1 < k) EXPECT_GT(r.lazy_steps, 0u);
  }
  EXPECT_THROW(coupled_run(3, 2, 10, 0), Error);
}

TEST(Coupled, ThreeFrogsMatchExactChain) {
  // W = 012 with the uniform alphabet {0,1,2}: exact law of (frog 2, frog 1).
  const auto sol = analyze(Word({0, 1, 2}), 3);
  std::map<std::pair<int, std::uint64_t>, double> exact;
  for (std::size_t s = 0; s < sol.states.size(); ++s)
    exact[{sol.states[s].pad_of(2), std::uint64_t{1} << sol.states[s].pad_of(1)}] +=
        sol.stationary.values[s];

  const auto r = coupled_run(3, 1, 200'000, 2);
  double tv = 0;
  for (const auto& [key, p] : exact) {
    auto it = r.frog_joint.find(key);
    const double f = it == r.frog_joint.end() ? 0.0 : static_cast<double>(it->second) / r.steps;
    tv += std::abs(f - p);
  }
  EXPECT_LT(tv / 2, 0.01);
  for (const auto& [key, p] : exact)
    EXPECT_NEAR(p, joint_formula(3, 1, key.first, key.second).get_d(), 1e-12);
}

TEST(Coupled, FiveFrogsCloseToFormula) {
  const auto r = coupled_run(5, 2, 200'000, 3);
  const auto d = compare_with_formula(r);
  EXPECT_LT(d.joint_tv, 0.02);
  EXPECT_LT(d.max_conditional_tv, 0.04);
  EXPECT_EQ(d.mask_cells, 10);
  // Frogs 1..m are uniform over the C(5,2) = 10 pad pairs.
  std::map<std::uint64_t, double> masks;
  for (const auto& [key, count] : r.frog_joint) masks[key.second] += count;
  ASSERT_EQ(masks.size(), 10u);
  for (const auto& [mask, count] : masks) EXPECT_NEAR(count / r.steps, 0.1, 0.01);
}

TEST(JointFormula, SumsToOne) {
  for (int k = 3; k <= 7; ++k)
    for (int m = 1; m <= std::min(3, k - 1); ++m) {
      Rational total = 0;
      for (std::uint64_t mask = 0; mask < (1u << k); ++mask) {
        if (std::popcount(mask) != m) continue;
        for (int p = 0; p < k; ++p)
          if (!(mask & (1u << p))) total += joint_formula(k, m, p, mask);
      }
      EXPECT_EQ(total, 1) << k << " " << m;
    }
}
