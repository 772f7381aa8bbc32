#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace lcsfrogs {

using Rational = mpq_class;

// A chain where every state has `degree` out-edges, each taken with
// probability 1/degree (edges may repeat). succ[s * degree + e] is the target.
struct UniformChain {
  std::size_t states = 0;
  int degree = 1;
  std::vector<std::uint32_t> succ;

  std::uint32_t next(std::size_t s, int e) const { return succ[s * degree + e]; }
};

struct Stationary {
  std::vector<double> values;
  std::optional<std::vector<Rational>> exact;
};

// Exact stationary vector by elimination modulo word-sized primes, CRT and
// rational reconstruction, checked exactly before returning. Throws
// "chain not uniquely ergodic" when the system is singular.
std::vector<Rational> stationary_exact(const UniformChain& c);

// Double precision via sparse LU on (P^T - I) with one row replaced by sum = 1.
std::vector<double> stationary_double(const UniformChain& c);

// Exact (with double copies) when requested, double only otherwise.
Stationary solve_stationary(const UniformChain& c, bool exact);

// Factorizes once, then applies the fundamental matrix Z = (I - P + 1 pi^T)^{-1}
// to any number of observables. Z g is the solution of (I - P) y = g - (pi.g) 1
// together with pi.y = pi.g.
class FundamentalSolver {
 public:
  FundamentalSolver(const UniformChain& c, std::span<const double> pi);
  ~FundamentalSolver();
  FundamentalSolver(FundamentalSolver&&) noexcept;
  FundamentalSolver& operator=(FundamentalSolver&&) noexcept;

  std::vector<double> apply(std::span<const double> g) const;
  // g^T Gamma g with Gamma = TZ + (TZ)^T + pi pi^T - T and T = diag(pi).
  double variance(std::span<const double> g) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<double> apply_fundamental(const UniformChain& c, std::span<const double> pi,
                                      std::span<const double> g);
double asymptotic_variance(const UniformChain& c, std::span<const double> pi,
                           std::span<const double> g);

}  // namespace lcsfrogs
