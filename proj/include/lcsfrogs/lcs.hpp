#pragma once

#include <cstdint>
#include <span>

#include "lcsfrogs/words.hpp"

namespace lcsfrogs {

using SymbolSpan = std::span<const Symbol>;

struct BandSchedule {
  std::int64_t t0 = 1;
  std::int64_t ratio_num = 5;
  std::int64_t ratio_den = 2;

  // t0 = floor(sqrt(2n)), ratio 5/2.
  static BandSchedule for_length(std::int64_t n);
  // Next band width: floor(t * ratio), but at least t + 1.
  std::int64_t next(std::int64_t t) const;
};

struct HeuristicResult {
  std::int64_t length;
  std::int64_t band_used;
  bool confirmed;
};

// Exact LCS length, bit-parallel over the shorter word.
std::int64_t lcs_dp(SymbolSpan v, SymbolSpan w);
inline std::int64_t lcs_dp(const Word& v, const Word& w) {
  return lcs_dp(v.symbols(), w.symbols());
}

// Plain quadratic two-row DP. Slow; kept as a test oracle and for tiny inputs.
std::int64_t lcs_naive(SymbolSpan v, SymbolSpan w);

// Longest common subsequence using only matches (i, j) with |i - j| <= t.
std::int64_t lcs_banded(SymbolSpan v, SymbolSpan w, std::int64_t t);
inline std::int64_t lcs_banded(const Word& v, const Word& w, std::int64_t t) {
  return lcs_banded(v.symbols(), w.symbols(), t);
}

// Widen the band until two consecutive answers agree. A band of
// max(|v|,|w|) is exact, so the loop always stops there at the latest.
HeuristicResult lcs_heuristic(SymbolSpan v, SymbolSpan w, const BandSchedule& sched);
HeuristicResult lcs_heuristic(SymbolSpan v, SymbolSpan w);
inline HeuristicResult lcs_heuristic(const Word& v, const Word& w) {
  return lcs_heuristic(v.symbols(), w.symbols());
}

// LCS(r, W^(x)) in O(|r| k) via frog displacements.
std::int64_t lcs_periodic(const Word& r, const Word& w, std::int64_t x);

// LCS(v, w) - LCS(v1, w1) - LCS(v2, w2) for equal halves.
std::int64_t delta_statistic(SymbolSpan v, SymbolSpan w);
inline std::int64_t delta_statistic(const Word& v, const Word& w) {
  return delta_statistic(v.symbols(), w.symbols());
}
// Same, with every LCS computed by lcs_heuristic.
std::int64_t delta_statistic_heuristic(SymbolSpan v, SymbolSpan w);

}  // namespace lcsfrogs
