#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lcsfrogs/markov.hpp"

namespace lcsfrogs {

enum class Sign { Plus, Minus };
enum class Phase { Begin, Trans, End };

inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

// Positive and negative pad sets on Z/kZ (k <= 64). A pad may hold one
// frog of each sign.
struct SignedState {
  int k = 0;
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;

  int plus_count() const;
  int minus_count() const;
  bool has(Sign s, int pad) const {
    return (((s == Sign::Plus ? plus : minus) >> pad) & 1u) != 0;
  }
  friend auto operator<=>(const SignedState&, const SignedState&) = default;
};

SignedState make_signed_state(int k, std::span<const int> plus, std::span<const int> minus);
std::vector<int> pads_of(std::uint64_t mask, int k);

// A labelled frog i^+ or i^- with 0-based index i.
struct SignedFrog {
  Sign sign;
  int index;
  friend bool operator==(const SignedFrog&, const SignedFrog&) = default;
};

// A frog of the unlabelled state, named by sign and pad.
struct SignedPad {
  Sign sign;
  int pad;
};

struct LabeledConfig {
  int k = 0;
  std::vector<int> plus;   // pad of frog i^+
  std::vector<int> minus;  // pad of frog i^-
  SignedFrog focus{Sign::Plus, 0};
  Phase phase = Phase::Begin;

  int pad(SignedFrog f) const { return f.sign == Sign::Plus ? plus[f.index] : minus[f.index]; }
  friend bool operator==(const LabeledConfig&, const LabeledConfig&) = default;
};

std::string to_string(const LabeledConfig& c);

// Every pad holds at most one frog of each sign.
bool is_valid_arrangement(const LabeledConfig& c);
// Membership in the begin / trans / end state sets.
bool is_member(const LabeledConfig& c);

// One intermediate step of a poke. Throws at phase End.
LabeledConfig t_step(const LabeledConfig& c);
// Swap signs, reverse the ring, swap begin and end. An involution.
LabeledConfig r_map(const LabeledConfig& c);

// Lifts s with the given labelling (plus_order[i] is the pad of frog i^+;
// empty spans mean "i-th smallest pad") and focuses on the frog at `frog`.
LabeledConfig lift(const SignedState& s, SignedPad frog, std::span<const int> plus_order = {},
                   std::span<const int> minus_order = {});
SignedState project(const LabeledConfig& c);
// Applies t_step until phase End.
LabeledConfig run_to_end(LabeledConfig c);

SignedState poke_signed(const SignedState& s, SignedPad frog);

// For |plus| = |minus| + 1: the unique pad x from which every cyclic partial
// sum of (1[plus] - 1[minus]) is positive.
int optimistic_frog(const SignedState& s);

// Conditional probability that frog m+1 sits at positions[m] given frogs
// 1..m occupy positions[0..m-1], for W = 12...k. positions are
// l_1 > l_2 > ... > l_{m+1} > l_1 - k (integers, taken mod k).
Rational margins_formula(int k, int m, std::span<const int> positions);
// Same quantity by counting positive sets whose optimistic frog is at l_{m+1}.
Rational margins_bruteforce(int k, int m, std::span<const int> positions);

// Probability that the lazy chain does nothing in one step.
Rational lazy_probability(int k, int m);

struct CoupledRunResult {
  int k = 0;
  int m = 0;
  std::uint64_t steps = 0;
  // (pad of frog m+1, pad mask of frogs 1..m) -> visits, from the frog side.
  std::map<std::pair<int, std::uint64_t>, std::uint64_t> frog_joint;
  // The same key read from the signed chain as (optimistic pad, minus set).
  std::map<std::pair<int, std::uint64_t>, std::uint64_t> signed_joint;
  std::uint64_t incompatible_steps = 0;
  std::uint64_t lazy_steps = 0;
};

// Runs the lazy signed chain with m+1 positive and m negative frogs in
// lockstep with the frog dynamics of W = 12...k, recording after each step.
CoupledRunResult coupled_run(int k, int m, std::uint64_t steps, std::uint64_t seed,
                             std::uint64_t burn_in = 10'000);

// Positions for margins_formula from pads: frog m+1 on `pad`, frogs 1..m
// on the pads of `mask` (which must not contain `pad`).
std::vector<int> window_positions(int k, int pad, std::uint64_t mask);

// Stationary probability of (frog m+1 on pad, frogs 1..m on mask): the
// conditional formula times the uniform 1 / C(k, m).
Rational joint_formula(int k, int m, int pad, std::uint64_t mask);

struct CoupledDistance {
  double joint_tv = 0;            // over all (pad, mask) pairs
  double max_conditional_tv = 0;  // worst mask, conditional on the mask
  double mask_chi2 = 0;           // frogs 1..m against uniform
  int mask_cells = 0;
};
CoupledDistance compare_with_formula(const CoupledRunResult& r);

// Every state of the (a, b) chain, in lexicographic mask order.
std::vector<SignedState> all_signed_states(int k, int a, int b);

// Every labelled configuration with a positive and b negative frogs that
// belongs to one of the state sets, over all phases in `phases`.
std::vector<LabeledConfig> all_configs(int k, int a, int b, std::span<const Phase> phases);

struct ReversalReport {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::optional<LabeledConfig> first_violation;
};

// r_map(t_step(r_map(t_step(c)))) == c for every non-end configuration.
ReversalReport check_time_reversal(int k, int a, int b);

}  // namespace lcsfrogs
