#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lcsfrogs/rng.hpp"
#include "lcsfrogs/words.hpp"

namespace lcsfrogs {

struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::int64_t trials = 1;
  std::int64_t n = 0;
  int alphabet_size = 2;
  int threads = 1;
};

struct SummaryStats {
  std::int64_t count = 0;
  double mean = 0;
  double stddev = 0;  // Bessel-corrected
  double min = 0;
  double max = 0;
};

SummaryStats summarize(std::span<const double> samples);

struct SampleSet {
  SummaryStats stats;
  std::vector<double> samples;  // in trial order
};

// How each LCS of an experiment is computed.
struct LcsMethod {
  enum class Kind { Auto, Exact, Heuristic, Band };
  Kind kind = Kind::Auto;
  std::int64_t band = 0;  // for Kind::Band

  static constexpr std::int64_t kHeuristicAbove = 20'000;
};

void fill_random(std::span<Symbol> out, int alphabet_size, SplitMix64& rng);
Word sample_word(std::int64_t n, int alphabet_size, SplitMix64& rng);

// Calls fn(i) for every i in [0, count) using up to `threads` workers.
// Each index is handled exactly once; callers store results by index.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& fn);

// Per frog: statistics of D_m(F_empty, R) / n over random R of length n.
std::vector<SummaryStats> estimate_speeds(const Word& w, int alphabet_size, std::int64_t n,
                                          std::int64_t trials, std::uint64_t seed,
                                          int threads = 1);

// Auto uses the exact DP up to n = 20000 and the heuristic above.
SampleSet delta_experiment(const ExperimentConfig& cfg, LcsMethod method = {});

// sum_m max(0, rho - D_m(F_empty, R) / n) over random R of length n.
std::vector<double> lambda_samples(const Word& w, int alphabet_size, double rho, std::int64_t n,
                                   std::int64_t trials, std::uint64_t seed, int threads = 1);

// LCS(R, R') / n for independent uniform R, R'. Auto means the heuristic.
SampleSet estimate_gamma_cs(const ExperimentConfig& cfg, LcsMethod method = {});

}  // namespace lcsfrogs
