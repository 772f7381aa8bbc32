#include "lcsfrogs/lcs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "lcsfrogs/error.hpp"
#include "lcsfrogs/frogs.hpp"

namespace lcsfrogs {

BandSchedule BandSchedule::for_length(std::int64_t n) {
  BandSchedule s;
  s.t0 = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(std::sqrt(2.0 * n))));
  return s;
}

std::int64_t BandSchedule::next(std::int64_t t) const {
  return std::max(t + 1, t * ratio_num / ratio_den);
}

std::int64_t lcs_dp(SymbolSpan v, SymbolSpan w) {
  if (v.size() > w.size()) std::swap(v, w);
  const std::size_t m = v.size();
  if (m == 0) return 0;
  const std::size_t words = (m + 63) / 64;

  // match[c] has bit i set when v[i] == c. Only symbols present get a row.
  std::vector<int> row_of(256, -1);
  std::vector<std::uint64_t> match;
  for (std::size_t i = 0; i < m; ++i) {
    int& r = row_of[v[i]];
    if (r < 0) {
      r = static_cast<int>(match.size() / words);
      match.resize(match.size() + words, 0);
    }
    match[r * words + i / 64] |= std::uint64_t{1} << (i % 64);
  }

  // Hyyro's recurrence: V' = (V + (V & M)) | (V & ~M); zeros of V count the LCS.
  std::vector<std::uint64_t> vbits(words, ~std::uint64_t{0});
  for (Symbol c : w) {
    const int r = row_of[c];
    if (r < 0) continue;
    const std::uint64_t* mrow = &match[r * words];
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < words; ++i) {
      const std::uint64_t x = vbits[i];
      const std::uint64_t u = x & mrow[i];
      const std::uint64_t s1 = x + u;
      const std::uint64_t c1 = s1 < x;
      const std::uint64_t s2 = s1 + carry;
      const std::uint64_t c2 = s2 < s1;
      vbits[i] = s2 | (x & ~mrow[i]);
      carry = c1 | c2;
    }
  }
  std::int64_t ones = 0;
  for (std::size_t i = 0; i < words; ++i) {
    std::uint64_t x = vbits[i];
    if (i + 1 == words && m % 64 != 0) x &= (std::uint64_t{1} << (m % 64)) - 1;
    ones += std::popcount(x);
  }
  return static_cast<std::int64_t>(m) - ones;
}

std::int64_t lcs_naive(SymbolSpan v, SymbolSpan w) {
  std::vector<std::int64_t> prev(w.size() + 1, 0), cur(w.size() + 1, 0);
  for (std::size_t i = 1; i <= v.size(); ++i) {
    for (std::size_t j = 1; j <= w.size(); ++j)
      cur[j] = v[i - 1] == w[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[w.size()];
}

std::int64_t lcs_banded(SymbolSpan v, SymbolSpan w, std::int64_t t) {
  if (t < 0) throw Error("band width must be non-negative");
  const auto n = static_cast<std::int64_t>(v.size());
  const auto m = static_cast<std::int64_t>(w.size());
  if (n == 0 || m == 0) return 0;
  t = std::min(t, std::max(n, m));

  // Rolling rows indexed by column 0..m, plus one spare slot. Cells just
  // outside a row's band are filled from neighbours so the next row can read
  // them; a value copied sideways never exceeds what the band allows.
  std::vector<std::int32_t> prev(m + 2, 0), cur(m + 2, 0);
  const std::int64_t rows = std::min(n, m + t);
  std::int64_t hi = 0;
  for (std::int64_t i = 1; i <= rows; ++i) {
    const std::int64_t lo = std::max<std::int64_t>(1, i - t);
    hi = std::min(m, i + t);
    cur[lo - 1] = lo - 1 == 0 ? 0 : prev[lo - 1];
    const Symbol vi = v[i - 1];
    std::int32_t left = cur[lo - 1];
    for (std::int64_t j = lo; j <= hi; ++j) {
      std::int32_t best = std::max(prev[j], left);
      if (w[j - 1] == vi) best = std::max(best, prev[j - 1] + 1);
      cur[j] = best;
      left = best;
    }
    if (hi + 1 <= m) cur[hi + 1] = cur[hi];
    std::swap(prev, cur);
  }
  return prev[hi];
}

HeuristicResult lcs_heuristic(SymbolSpan v, SymbolSpan w, const BandSchedule& sched) {
  const auto full = static_cast<std::int64_t>(std::max(v.size(), w.size()));
  std::int64_t t = std::min(std::max<std::int64_t>(sched.t0, 0), full);
  std::int64_t last = lcs_banded(v, w, t);
  while (t < full) {
    const std::int64_t nt = std::min(sched.next(t), full);
    const std::int64_t val = lcs_banded(v, w, nt);
    t = nt;
    if (val == last) return {val, t, true};
    last = val;
  }
  return {last, t, true};
}

HeuristicResult lcs_heuristic(SymbolSpan v, SymbolSpan w) {
  const auto n = static_cast<std::int64_t>(std::max(v.size(), w.size()));
  return lcs_heuristic(v, w, BandSchedule::for_length(n));
}

std::int64_t lcs_periodic(const Word& r, const Word& w, std::int64_t x) {
  if (x < 0) throw Error("x must be non-negative");
  return ledges_after(r, w).eval(x);
}

namespace {

template <class Lcs>
std::int64_t delta_with(SymbolSpan v, SymbolSpan w, Lcs&& lcs) {
  if (v.size() != w.size()) throw Error("delta needs equal lengths");
  if (v.size() % 2 != 0) throw Error("delta needs even length");
  const std::size_t h = v.size() / 2;
  return lcs(v, w) - lcs(v.first(h), w.first(h)) - lcs(v.subspan(h), w.subspan(h));
}

}  // namespace

std::int64_t delta_statistic(SymbolSpan v, SymbolSpan w) {
  return delta_with(v, w, [](SymbolSpan a, SymbolSpan b) { return lcs_dp(a, b); });
}

std::int64_t delta_statistic_heuristic(SymbolSpan v, SymbolSpan w) {
  return delta_with(v, w,
                    [](SymbolSpan a, SymbolSpan b) { return lcs_heuristic(a, b).length; });
}

}  // namespace lcsfrogs
