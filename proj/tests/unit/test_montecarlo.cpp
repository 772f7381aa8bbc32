#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numeric>

#include "lcsfrogs/chain.hpp"
#include "lcsfrogs/error.hpp"
#include "lcsfrogs/montecarlo.hpp"
#include "oracles.hpp"

using namespace lcsfrogs;

namespace {

Word w(const std::string& digits) { return Word(oracle::seq(digits)); }

}  // namespace

TEST(Summary, BesselAndExtremes) {
  const std::vector<double> xs{1, 2, 3, 4};
  const auto s = summarize(xs);
  EXPECT_EQ(s.count, 4);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.stddev, std::sqrt(5.0 / 3));
  EXPECT_EQ(s.min, 1);
  EXPECT_EQ(s.max, 4);
  EXPECT_EQ(summarize(std::vector<double>{}).count, 0);
  EXPECT_EQ(summarize(std::vector<double>{7}).stddev, 0);
}

TEST(SampleWord, EmptyAndDeterministic) {
  SplitMix64 a(5), b(5);
  EXPECT_TRUE(sample_word(0, 2, a).empty());
  EXPECT_EQ(sample_word(1000, 3, a), sample_word(1000, 3, b));
  EXPECT_THROW(sample_word(-1, 2, a), Error);
  EXPECT_THROW(sample_word(3, 0, a), Error);
}

TEST(SampleWord, FrequenciesNearUniform) {
  for (int sigma : {2, 3, 4, 5, 16, 256}) {
    SplitMix64 rng(stream_seed(8, sigma));
    const std::int64_t n = 1'000'000;
    const auto word = sample_word(n, sigma, rng);
    std::vector<std::int64_t> count(sigma, 0);
    for (auto s : word.symbols()) ++count[s];
    const double p = 1.0 / sigma;
    const double sd = std::sqrt(n * p * (1 - p));
    // Bonferroni over the cells keeps the whole check near 3 sigma.
    const double z = sigma > 8 ? 4.5 : 3.0;
    for (auto c : count) EXPECT_LT(std::abs(c - n * p), z * sd) << sigma;
  }
}

TEST(ParallelFor, EachIndexOnceAndErrorsPropagate) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(1000, 4, [&](std::int64_t i) { ++hits[i]; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(100, 3,
                            [](std::int64_t i) {
                              if (i == 17) throw Error("boom");
                            }),
               Error);
}

TEST(EstimateSpeeds, FourDistinctSymbols) {
  const auto stats = estimate_speeds(w("0123"), 4, 100'000, 100, 1, 2);
  const double expect[] = {0.25, 5.0 / 12, 5.0 / 6, 2.5};
  for (int m = 0; m < 4; ++m) {
    EXPECT_NEAR(stats[m].mean, expect[m], 0.01);
    // Every single trial lands within 0.01 as well.
    EXPECT_LE(stats[m].max - expect[m], 0.01);
    EXPECT_LE(expect[m] - stats[m].min, 0.01);
  }
}

TEST(EstimateSpeeds, TwoSymbolsAndZeroLength) {
  const auto stats = estimate_speeds(w("01"), 2, 100'000, 20, 2);
  EXPECT_NEAR(stats[0].mean, 0.5, 0.01);
  EXPECT_NEAR(stats[1].mean, 1.5, 0.01);
  for (const auto& s : estimate_speeds(w("012"), 3, 0, 5, 0)) EXPECT_EQ(s.mean, 0);
  EXPECT_THROW(estimate_speeds(w("0101"), 2, 10, 1, 0), Error);
}

TEST(EstimateSpeeds, ErrorShrinksWithLength) {
  const auto exact = speeds_closed_form(4, 4);
  auto error = [&](std::int64_t n) {
    const auto stats = estimate_speeds(w("0123"), 4, n, 4000, 3);
    double e = 0;
    for (int m = 0; m < 4; ++m) e += std::abs(stats[m].mean - exact[m].get_d());
    return e;
  };
  EXPECT_GT(error(100), error(400));
}

TEST(Delta, TwoLettersMatchesEnumeration) {
  // All 16 binary pairs of length 2.
  std::vector<double> values;
  oracle::for_each_word(2, 2, [&](const oracle::Seq& v) {
    oracle::for_each_word(2, 2, [&](const oracle::Seq& u) {
      values.push_back(static_cast<double>(oracle::lcs(v, u) - (v[0] == u[0]) - (v[1] == u[1])));
    });
  });
  const auto exact = summarize(values);

  ExperimentConfig cfg{9, 40'000, 2, 2, 1};
  const auto got = delta_experiment(cfg);
  EXPECT_NEAR(got.stats.mean, exact.mean, 4 * exact.stddev / std::sqrt(40'000.0));
  std::array<int, 3> hist{};
  for (double d : got.samples) {
    ASSERT_GE(d, 0);
    ASSERT_LE(d, 2);
    ++hist[static_cast<int>(d)];
  }
  std::array<int, 3> expect_hist{};
  for (double d : values) ++expect_hist[static_cast<int>(d)];
  for (int d = 0; d < 3; ++d)
    EXPECT_NEAR(hist[d] / 40'000.0, expect_hist[d] / 16.0, 0.01) << d;
}

TEST(Delta, OddLengthAndReproducibility) {
  ExperimentConfig cfg{4, 50, 101, 2, 1};
  EXPECT_THROW(delta_experiment(cfg), Error);
  cfg.n = 200;
  const auto one = delta_experiment(cfg);
  cfg.threads = 3;
  const auto three = delta_experiment(cfg);
  EXPECT_EQ(one.samples, three.samples);
  for (double d : one.samples) EXPECT_GE(d, 0);
  const auto heur = delta_experiment(cfg, {LcsMethod::Kind::Heuristic, 0});
  EXPECT_EQ(heur.samples, one.samples);
}

TEST(Lambda, Values) {
  for (double x : lambda_samples(w("0123"), 4, 0.0, 1000, 10, 1)) EXPECT_EQ(x, 0);

  const auto big = lambda_samples(w("01"), 2, 10.0, 10'000, 50, 2);
  EXPECT_LT(summarize(big).stddev, 0.05);
  EXPECT_NEAR(summarize(big).mean, 2 * 10.0 - 2.0, 0.05);

  const auto at_one = lambda_samples(w("0123"), 4, 1.0, 10'000, 200, 3);
  EXPECT_NEAR(summarize(at_one).mean, 1.5, 0.05);
  EXPECT_THROW(lambda_samples(w("0123"), 4, -1.0, 10, 1, 0), Error);
}

TEST(ChvatalSankoff, SmallCases) {
  ExperimentConfig one{1, 5, 50, 1, 1};
  for (double x : estimate_gamma_cs(one).samples) EXPECT_EQ(x, 1.0);

  double total = 0;
  oracle::for_each_word(2, 2, [&](const oracle::Seq& v) {
    oracle::for_each_word(2, 2, [&](const oracle::Seq& u) { total += oracle::lcs(v, u); });
  });
  const double exact = total / 32;
  ExperimentConfig cfg{2, 40'000, 2, 2, 1};
  const auto got = estimate_gamma_cs(cfg);
  EXPECT_NEAR(got.stats.mean, exact, 4 * got.stats.stddev / std::sqrt(40'000.0));
}

TEST(ChvatalSankoff, MediumBinary) {
  ExperimentConfig cfg{5, 4, 20'000, 2, 1};
  const auto got = estimate_gamma_cs(cfg);
  EXPECT_GT(got.stats.mean, 0.80);
  EXPECT_LT(got.stats.mean, 0.82);
}
