#include <gtest/gtest.h>

#include <cmath>

#include "lcsfrogs/error.hpp"
#include "lcsfrogs/markov.hpp"
#include "lcsfrogs/rng.hpp"

using namespace lcsfrogs;

namespace {

// A ring s -> s+1 plus random extra edges and one self-loop: irreducible
// and aperiodic.
UniformChain random_chain(SplitMix64& rng, std::size_t n, int degree) {
  UniformChain c{n, degree, std::vector<std::uint32_t>(n * degree)};
  for (std::size_t s = 0; s < n; ++s) {
    c.succ[s * degree] = static_cast<std::uint32_t>((s + 1) % n);
    for (int e = 1; e < degree; ++e) c.succ[s * degree + e] = static_cast<std::uint32_t>(rng.below(n));
  }
  if (degree > 1) c.succ[1] = 0;
  return c;
}

using Dense = std::vector<std::vector<double>>;

Dense transition(const UniformChain& c) {
  Dense p(c.states, std::vector<double>(c.states, 0.0));
  for (std::size_t s = 0; s < c.states; ++s)
    for (int e = 0; e < c.degree; ++e) p[s][c.next(s, e)] += 1.0 / c.degree;
  return p;
}

// Gauss-Jordan with partial pivoting.
Dense inverse(Dense a) {
  const std::size_t n = a.size();
  Dense inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(inv[col], inv[piv]);
    const double d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) a[col][j] /= d, inv[col][j] /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const double f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) a[r][j] -= f * a[col][j], inv[r][j] -= f * inv[col][j];
    }
  }
  return inv;
}

// Exact stationary vector by dense rational elimination.
std::vector<Rational> dense_stationary(const UniformChain& c) {
  const std::size_t n = c.states;
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, 0));
  for (std::size_t s = 0; s < n; ++s)
    for (int e = 0; e < c.degree; ++e) a[c.next(s, e)][s] += Rational(1, c.degree);
  for (std::size_t s = 0; s < n; ++s) a[s][s] -= 1;
  for (std::size_t j = 0; j <= n; ++j) a[n - 1][j] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (a[piv][col] == 0) ++piv;
    std::swap(a[col], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  std::vector<Rational> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = a[i][n] / a[i][i];
  return pi;
}

}  // namespace

TEST(Stationary, TwoStateSymmetric) {
  const UniformChain c{2, 2, {0, 1, 0, 1}};
  const auto pi = stationary_exact(c);
  EXPECT_EQ(pi[0], Rational(1, 2));
  EXPECT_EQ(pi[1], Rational(1, 2));
}

TEST(Stationary, ExactMatchesDenseOracle) {
  SplitMix64 rng(21);
  for (int t = 0; t < 40; ++t) {
    const auto c = random_chain(rng, 2 + rng.below(30), 1 + static_cast<int>(rng.below(4)));
    if (c.degree == 1) continue;  // a pure ring is periodic but still has a unique solution
    const auto pi = stationary_exact(c);
    EXPECT_EQ(pi, dense_stationary(c));
    const auto pd = stationary_double(c);
    for (std::size_t s = 0; s < c.states; ++s) EXPECT_NEAR(pd[s], pi[s].get_d(), 1e-12);
  }
}

TEST(Stationary, IsStationary) {
  SplitMix64 rng(22);
  const auto c = random_chain(rng, 400, 3);
  const auto pi = solve_stationary(c, true);
  ASSERT_TRUE(pi.exact);
  std::vector<Rational> next(c.states, 0);
  Rational total = 0;
  for (std::size_t s = 0; s < c.states; ++s) {
    total += (*pi.exact)[s];
    EXPECT_GT((*pi.exact)[s], 0);
    for (int e = 0; e < c.degree; ++e) next[c.next(s, e)] += (*pi.exact)[s] / c.degree;
  }
  EXPECT_EQ(total, 1);
  EXPECT_EQ(next, *pi.exact);
}

TEST(Stationary, ReducibleChainThrows) {
  // Two closed classes {0} and {1}.
  const UniformChain c{2, 1, {0, 1}};
  EXPECT_THROW(stationary_exact(c), Error);
  EXPECT_THROW(stationary_double(c), Error);
}

TEST(Fundamental, MatchesDenseMatrices) {
  SplitMix64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const auto c = random_chain(rng, 2 + rng.below(25), 2 + static_cast<int>(rng.below(3)));
    const std::size_t n = c.states;
    const auto pi = stationary_double(c);
    const auto p = transition(c);

    Dense m(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = (i == j) - p[i][j] + pi[j];
    const auto z = inverse(m);

    std::vector<double> g(n);
    for (auto& x : g) x = static_cast<double>(rng.below(7));

    FundamentalSolver solver(c, pi);
    const auto zg = solver.apply(g);
    for (std::size_t i = 0; i < n; ++i) {
      double expect = 0;
      for (std::size_t j = 0; j < n; ++j) expect += z[i][j] * g[j];
      ASSERT_NEAR(zg[i], expect, 1e-9);
    }

    // Gamma = TZ + (TZ)^T - pi pi^T - T.
    double quad = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double gamma = pi[i] * z[i][j] + pi[j] * z[j][i] - pi[i] * pi[j] - (i == j) * pi[i];
        quad += g[i] * gamma * g[j];
      }
    EXPECT_NEAR(solver.variance(g), quad, 1e-9);
    EXPECT_NEAR(asymptotic_variance(c, pi, g), quad, 1e-9);
  }
}

TEST(Fundamental, ConstantObservableHasNoVariance) {
  SplitMix64 rng(24);
  const auto c = random_chain(rng, 30, 3);
  const auto pi = stationary_double(c);
  const std::vector<double> g(c.states, 2.5);
  EXPECT_NEAR(asymptotic_variance(c, pi, g), 0.0, 1e-10);
}

TEST(Fundamental, VarianceMatchesSimulation) {
  // Two-state chain that flips with probability 1/3: g = indicator of state 0.
  const UniformChain c{2, 3, {0, 0, 1, 1, 1, 0}};
  const auto pi = stationary_double(c);
  const std::vector<double> g{1, 0};
  const double v = asymptotic_variance(c, pi, g);
  // Closed form: pi0 pi1 (1 + lambda) / (1 - lambda), lambda = 1/3.
  EXPECT_NEAR(v, 0.25 * (4.0 / 3) / (2.0 / 3), 1e-12);
}
