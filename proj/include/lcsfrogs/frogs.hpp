#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lcsfrogs/heights.hpp"
#include "lcsfrogs/words.hpp"

namespace lcsfrogs {

// Frog ranks are 1-based in the API (1 = nastiest); pads are 0-based.
class FrogArrangement {
 public:
  explicit FrogArrangement(std::vector<int> pad_of);
  static FrogArrangement empty(int k);

  int k() const { return static_cast<int>(pad_of_.size()); }
  int pad_of(int frog) const { return pad_of_[frog - 1]; }
  std::span<const int> pads() const { return pad_of_; }
  // Rank of the frog sitting on pad p.
  int frog_on(int pad) const;

  friend bool operator==(const FrogArrangement&, const FrogArrangement&) = default;
  friend auto operator<=>(const FrogArrangement&, const FrogArrangement&) = default;

 private:
  std::vector<int> pad_of_;
};

struct FrogArrangementHash {
  std::size_t operator()(const FrogArrangement& f) const;
};

struct TransitionRecord {
  FrogArrangement arrangement;
  std::vector<std::int64_t> displacement;     // D_1..D_k
  std::vector<std::int64_t> jumps_over_pred;  // J_1..J_k
};

struct Hop {
  int frog;  // 1-based rank
  int from;
  int to;
  int distance;
};

std::string format_hop(const Hop& h);

// Mutable frog state for long runs. Pokes accumulate D and J in place.
class FrogDynamics {
 public:
  FrogDynamics(const Word& w, const FrogArrangement& start);

  int k() const { return k_; }
  void poke(Symbol a);
  // Same as poke but reports every hop, in the order they happen.
  void poke(Symbol a, const std::function<void(const Hop&)>& on_hop);
  void apply(std::span<const Symbol> r);

  FrogArrangement arrangement() const;
  // Moves every frog to its pad in f; counters are cleared.
  void reset(const FrogArrangement& f);
  std::span<const int> pad_of() const { return pos_; }
  std::span<const std::int64_t> displacement() const { return disp_; }
  std::span<const std::int64_t> jumps() const { return jumps_; }
  void reset_counters();

 private:
  template <class OnHop>
  void poke_impl(Symbol a, OnHop&& on_hop);

  int k_;
  std::vector<std::vector<int>> pads_by_symbol_;
  std::vector<int> pos_;  // by 0-based rank
  std::vector<int> occ_;  // by pad; -1 when empty
  std::vector<std::int64_t> disp_;
  std::vector<std::int64_t> jumps_;
  std::vector<int> heap_;
  std::vector<char> agitated_;
};

TransitionRecord poke(const FrogArrangement& f, Symbol a, const Word& w);
TransitionRecord apply_word(const FrogArrangement& f, const Word& r, const Word& w);

// Ledges of h_R against W^(inf), read off the displacements from F_empty.
KHeight ledges_after(const Word& r, const Word& w);

// Cyclic gap from frog a's pad forward to frog b's pad, in 1..k
// (a full turn when a == b). Frog 0 is the fixed marker on the boundary
// between pads k-1 and 0, so gap(0, b) = pad_of(b) + 1.
int cyclic_gap(const FrogArrangement& f, int a, int b);

}  // namespace lcsfrogs
