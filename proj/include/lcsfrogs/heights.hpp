#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lcsfrogs/words.hpp"

namespace lcsfrogs {

// A k-height stored by its ledges x_1 < ... < x_k.
class KHeight {
 public:
  KHeight(int k, std::vector<std::int64_t> ledges);
  // Height of the empty word: ledges 0..k-1.
  static KHeight empty(int k);

  int k() const { return k_; }
  std::span<const std::int64_t> ledges() const { return ledges_; }

  std::int64_t eval(std::int64_t x) const;
  // h(0), h(1), ..., h(upto).
  std::vector<std::int64_t> sample(std::int64_t upto) const;
  // Smallest window end that ledges_of needs to recover this height.
  std::int64_t window() const { return ledges_.back() + k_; }

  friend bool operator==(const KHeight&, const KHeight&) = default;

 private:
  int k_;
  std::vector<std::int64_t> ledges_;
};

// h_values[x] = h(x) for x = 0..L. The window must reach past the last
// ledge; values below 0 are implied (h(x) = x).
KHeight ledges_of(std::span<const std::int64_t> h_values, int k);

// One step of the LCS recurrence against U = W^(inf): given h_R on
// [0, L], returns h_{Ra} on the same window.
std::vector<std::int64_t> evolve(std::span<const std::int64_t> h, Symbol a,
                                 const Word& w);

// h_R on [0, upto] by iterating evolve from the empty word.
std::vector<std::int64_t> height_by_evolution(const Word& r, const Word& w,
                                              std::int64_t upto);

}  // namespace lcsfrogs
