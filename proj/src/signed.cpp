#include "lcsfrogs/signed.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "lcsfrogs/error.hpp"
#include "lcsfrogs/frogs.hpp"
#include "lcsfrogs/rng.hpp"
#include "lcsfrogs/words.hpp"

namespace lcsfrogs {

namespace {

std::uint64_t bit(int p) { return std::uint64_t{1} << p; }

void check_k(int k) {
  if (k < 1 || k > 64) throw Error("signed states need 1 <= k <= 64");
}

int wrap(int x, int k) { return ((x % k) + k) % k; }

}  // namespace

int SignedState::plus_count() const { return std::popcount(plus); }
int SignedState::minus_count() const { return std::popcount(minus); }

SignedState make_signed_state(int k, std::span<const int> plus, std::span<const int> minus) {
  check_k(k);
  SignedState s{k, 0, 0};
  for (int p : plus) {
    if (p < 0 || p >= k || (s.plus & bit(p))) throw Error("bad positive pad set");
    s.plus |= bit(p);
  }
  for (int p : minus) {
    if (p < 0 || p >= k || (s.minus & bit(p))) throw Error("bad negative pad set");
    s.minus |= bit(p);
  }
  return s;
}

std::vector<int> pads_of(std::uint64_t mask, int k) {
  std::vector<int> out;
  for (int p = 0; p < k; ++p)
    if (mask & bit(p)) out.push_back(p);
  return out;
}

std::string to_string(const LabeledConfig& c) {
  std::string s = "k=" + std::to_string(c.k) + " +[";
  for (std::size_t i = 0; i < c.plus.size(); ++i) s += (i ? "," : "") + std::to_string(c.plus[i]);
  s += "] -[";
  for (std::size_t i = 0; i < c.minus.size(); ++i) s += (i ? "," : "") + std::to_string(c.minus[i]);
  s += "] y=" + std::to_string(c.focus.index + 1) + (c.focus.sign == Sign::Plus ? "+" : "-");
  s += c.phase == Phase::Begin ? " begin" : c.phase == Phase::Trans ? " trans" : " end";
  return s;
}

namespace {

// No pad holds two frogs of one sign, not counting `skip`.
bool valid_without(const LabeledConfig& c, std::optional<SignedFrog> skip) {
  std::uint64_t seen_plus = 0, seen_minus = 0;
  for (int i = 0; i < static_cast<int>(c.plus.size()); ++i) {
    if (skip && *skip == SignedFrog{Sign::Plus, i}) continue;
    if (seen_plus & bit(c.plus[i])) return false;
    seen_plus |= bit(c.plus[i]);
  }
  for (int i = 0; i < static_cast<int>(c.minus.size()); ++i) {
    if (skip && *skip == SignedFrog{Sign::Minus, i}) continue;
    if (seen_minus & bit(c.minus[i])) return false;
    seen_minus |= bit(c.minus[i]);
  }
  return true;
}

// Another frog of sign `sign` on `pad`, other than `not_this`.
std::optional<SignedFrog> frog_at(const LabeledConfig& c, Sign sign, int pad,
                                  std::optional<SignedFrog> not_this) {
  const auto& v = sign == Sign::Plus ? c.plus : c.minus;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    SignedFrog f{sign, i};
    if (v[i] == pad && !(not_this && *not_this == f)) return f;
  }
  return std::nullopt;
}

bool focus_in_range(const LabeledConfig& c) {
  const auto n = c.focus.sign == Sign::Plus ? c.plus.size() : c.minus.size();
  return c.focus.index >= 0 && static_cast<std::size_t>(c.focus.index) < n;
}

}  // namespace

bool is_valid_arrangement(const LabeledConfig& c) { return valid_without(c, std::nullopt); }

bool is_member(const LabeledConfig& c) {
  if (c.k < 1 || !focus_in_range(c)) return false;
  for (int p : c.plus)
    if (p < 0 || p >= c.k) return false;
  for (int p : c.minus)
    if (p < 0 || p >= c.k) return false;
  const bool valid = is_valid_arrangement(c);
  if (c.phase != Phase::Trans) return valid;
  if (!valid) return valid_without(c, c.focus);
  return c.focus.sign == Sign::Plus &&
         frog_at(c, Sign::Minus, c.pad(c.focus), std::nullopt).has_value();
}

LabeledConfig t_step(const LabeledConfig& c) {
  if (c.phase == Phase::End) throw Error("t_step called at phase end");
  const SignedFrog y = c.focus;
  const int here = c.pad(y);
  if (c.phase == Phase::Begin && y.sign == Sign::Plus) {
    if (auto z = frog_at(c, Sign::Minus, here, std::nullopt)) {
      LabeledConfig out = c;
      out.focus = *z;
      out.phase = Phase::End;
      return out;
    }
  }
  LabeledConfig out = c;
  const int there = (here + 1) % c.k;
  (y.sign == Sign::Plus ? out.plus : out.minus)[y.index] = there;
  if (auto z = frog_at(out, y.sign, there, y)) {
    out.focus = *z;
    out.phase = Phase::Trans;
  } else if (y.sign == Sign::Minus) {
    if (auto zp = frog_at(out, Sign::Plus, there, std::nullopt)) {
      out.focus = *zp;
      out.phase = Phase::Trans;
    } else {
      out.phase = Phase::End;
    }
  } else {
    out.phase = Phase::End;
  }
  return out;
}

LabeledConfig r_map(const LabeledConfig& c) {
  LabeledConfig out;
  out.k = c.k;
  for (int p : c.minus) out.plus.push_back(wrap(c.k - p, c.k));
  for (int p : c.plus) out.minus.push_back(wrap(c.k - p, c.k));
  const SignedFrog y = c.focus;
  if (c.phase != Phase::Trans) {
    out.focus = {flip(y.sign), y.index};
    out.phase = c.phase == Phase::Begin ? Phase::End : Phase::Begin;
    return out;
  }
  out.phase = Phase::Trans;
  const int here = c.pad(y);
  if (auto z = frog_at(c, y.sign, here, y)) {
    out.focus = {flip(z->sign), z->index};
  } else if (y.sign == Sign::Plus) {
    auto zm = frog_at(c, Sign::Minus, here, std::nullopt);
    if (!zm) throw Error("r_map: configuration is not in the state set");
    out.focus = {Sign::Plus, zm->index};
  } else {
    throw Error("r_map: configuration is not in the state set");
  }
  return out;
}

LabeledConfig lift(const SignedState& s, SignedPad frog, std::span<const int> plus_order,
                   std::span<const int> minus_order) {
  LabeledConfig c;
  c.k = s.k;
  auto plus = pads_of(s.plus, s.k);
  auto minus = pads_of(s.minus, s.k);
  auto labelled = [](std::vector<int> pads, std::span<const int> order) {
    if (order.empty()) return pads;
    std::vector<int> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted != pads) throw Error("labelling does not match the state");
    return std::vector<int>(order.begin(), order.end());
  };
  c.plus = labelled(std::move(plus), plus_order);
  c.minus = labelled(std::move(minus), minus_order);
  auto z = frog_at(c, frog.sign, frog.pad, std::nullopt);
  if (!z) throw Error("no such frog in the state");
  c.focus = *z;
  c.phase = Phase::Begin;
  return c;
}

SignedState project(const LabeledConfig& c) {
  return make_signed_state(c.k, c.plus, c.minus);
}

LabeledConfig run_to_end(LabeledConfig c) {
  const std::size_t limit = 16 * (c.plus.size() + c.minus.size() + 1) * (c.k + 1);
  for (std::size_t i = 0; c.phase != Phase::End; ++i) {
    if (i > limit) throw Error("poke did not terminate");
    c = t_step(c);
  }
  return c;
}

SignedState poke_signed(const SignedState& s, SignedPad frog) {
  return project(run_to_end(lift(s, frog)));
}

int optimistic_frog(const SignedState& s) {
  if (s.plus_count() != s.minus_count() + 1)
    throw Error("optimistic frog needs one more positive frog than negative ones");
  // Cycle lemma: with prefix sums P_x = sum_{i<x} c_i and total +1, the start
  // is the last x attaining min P_x.
  int best = 0, best_val = 0, run = 0;
  for (int x = 0; x < s.k; ++x) {
    if (run <= best_val) best = x, best_val = run;
    run += (s.has(Sign::Plus, x) ? 1 : 0) - (s.has(Sign::Minus, x) ? 1 : 0);
  }
  return best;
}

namespace {

std::vector<std::vector<mpz_class>> pascal(int n) {
  std::vector<std::vector<mpz_class>> c(n + 1, std::vector<mpz_class>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c;
}

void check_positions(int k, int m, std::span<const int> l) {
  if (k < 1) throw Error("k must be positive");
  if (m < 0 || m + 1 > k) throw Error("m out of range");
  if (static_cast<int>(l.size()) != m + 1) throw Error("need m+1 positions");
  for (int i = 0; i + 1 < static_cast<int>(l.size()); ++i)
    if (l[i] <= l[i + 1]) throw Error("positions must be strictly decreasing");
  if (l.front() >= l.back() + k) throw Error("positions must fit in one window of length k");
}

}  // namespace

Rational margins_formula(int k, int m, std::span<const int> l) {
  check_positions(k, m, l);
  const auto binom = pascal(k);
  std::vector<int> delta(m);
  for (int i = 0; i < m; ++i) delta[i] = l[i] - l[i + 1];

  // Depth-first over a_1..a_m with a_1 + ... + a_j <= j and total m.
  mpz_class total = 0;
  std::function<void(int, int, mpz_class)> dfs = [&](int i, int used, mpz_class prod) {
    if (i == m) {
      if (used == m) total += prod;
      return;
    }
    const int cap = std::min(i + 1 - used, delta[i]);
    for (int a = 0; a <= cap; ++a) dfs(i + 1, used + a, prod * binom[delta[i]][a]);
  };
  dfs(0, 0, 1);
  Rational out(total, binom[k][m + 1]);
  out.canonicalize();
  return out;
}

Rational margins_bruteforce(int k, int m, std::span<const int> l) {
  check_positions(k, m, l);
  check_k(k);
  std::uint64_t minus = 0;
  for (int i = 0; i < m; ++i) minus |= bit(wrap(l[i], k));
  const int target = wrap(l[m], k);
  long count = 0;
  long all = 0;
  for (std::uint64_t plus = 0; plus < bit(k); ++plus) {
    if (std::popcount(plus) != m + 1) continue;
    ++all;
    if (optimistic_frog(SignedState{k, plus, minus}) == target) ++count;
  }
  Rational out(count, all);
  out.canonicalize();
  return out;
}

std::vector<int> window_positions(int k, int pad, std::uint64_t mask) {
  check_k(k);
  if (pad < 0 || pad >= k || (mask & bit(pad))) throw Error("bad pad for frog m+1");
  std::vector<int> l;
  for (int p : pads_of(mask, k)) l.push_back(pad + wrap(p - pad, k));
  std::sort(l.rbegin(), l.rend());
  l.push_back(pad);
  return l;
}

Rational joint_formula(int k, int m, int pad, std::uint64_t mask) {
  if (std::popcount(mask) != m) throw Error("mask must hold m pads");
  const auto l = window_positions(k, pad, mask);
  Rational out = margins_formula(k, m, l) / Rational(pascal(k)[k][m]);
  out.canonicalize();
  return out;
}

CoupledDistance compare_with_formula(const CoupledRunResult& r) {
  const int k = r.k, m = r.m;
  CoupledDistance d;
  if (r.steps == 0) return d;
  const double total = static_cast<double>(r.steps);
  const double masks = pascal(k)[k][m].get_d();
  for (std::uint64_t mask = 0; mask < bit(k); ++mask) {
    if (std::popcount(mask) != m) continue;
    std::uint64_t in_mask = 0;
    std::vector<double> emp(k, 0.0);
    for (int p = 0; p < k; ++p) {
      if (mask & bit(p)) continue;
      auto it = r.frog_joint.find({p, mask});
      const std::uint64_t c = it == r.frog_joint.end() ? 0 : it->second;
      emp[p] = static_cast<double>(c);
      in_mask += c;
    }
    double cond = 0;
    for (int p = 0; p < k; ++p) {
      if (mask & bit(p)) continue;
      const double f = margins_formula(k, m, window_positions(k, p, mask)).get_d();
      d.joint_tv += std::abs(emp[p] / total - f / masks);
      if (in_mask > 0) cond += std::abs(emp[p] / static_cast<double>(in_mask) - f);
    }
    d.max_conditional_tv = std::max(d.max_conditional_tv, cond / 2);
    const double expect = total / masks;
    d.mask_chi2 += (in_mask - expect) * (in_mask - expect) / expect;
    ++d.mask_cells;
  }
  d.joint_tv /= 2;
  return d;
}

Rational lazy_probability(int k, int m) {
  if (2 * m + 1 >= k) return 0;
  Rational out(k - 2 * m - 1, k);
  out.canonicalize();
  return out;
}

std::vector<SignedState> all_signed_states(int k, int a, int b) {
  check_k(k);
  if (k > 24) throw Error("too many states to list");
  std::vector<std::uint64_t> pm, mm;
  for (std::uint64_t s = 0; s < bit(k); ++s) {
    if (std::popcount(s) == a) pm.push_back(s);
    if (std::popcount(s) == b) mm.push_back(s);
  }
  std::vector<SignedState> out;
  for (auto p : pm)
    for (auto q : mm) out.push_back({k, p, q});
  return out;
}

std::vector<LabeledConfig> all_configs(int k, int a, int b, std::span<const Phase> phases) {
  check_k(k);
  if (a < 0 || b < 0 || a + b == 0) throw Error("need at least one frog");
  const int frogs = a + b;
  std::uint64_t total = 1;
  for (int i = 0; i < frogs; ++i) {
    total *= static_cast<std::uint64_t>(k);
    if (total > 50'000'000) throw Error("too many configurations to list");
  }
  std::vector<LabeledConfig> out;
  std::vector<int> pads(frogs, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    for (int i = 0; i < frogs; ++i, x /= k) pads[i] = static_cast<int>(x % k);
    LabeledConfig c;
    c.k = k;
    c.plus.assign(pads.begin(), pads.begin() + a);
    c.minus.assign(pads.begin() + a, pads.end());
    for (Phase ph : phases) {
      c.phase = ph;
      for (int i = 0; i < frogs; ++i) {
        c.focus = i < a ? SignedFrog{Sign::Plus, i} : SignedFrog{Sign::Minus, i - a};
        if (is_member(c)) out.push_back(c);
      }
    }
  }
  return out;
}

ReversalReport check_time_reversal(int k, int a, int b) {
  const Phase phases[] = {Phase::Begin, Phase::Trans};
  ReversalReport rep;
  for (const auto& c : all_configs(k, a, b, phases)) {
    ++rep.checked;
    bool ok = false;
    try {
      ok = r_map(t_step(r_map(t_step(c)))) == c;
    } catch (const Error&) {
    }
    if (!ok) {
      ++rep.violations;
      if (!rep.first_violation) rep.first_violation = c;
    }
  }
  return rep;
}

CoupledRunResult coupled_run(int k, int m, std::uint64_t steps, std::uint64_t seed,
                             std::uint64_t burn_in) {
  check_k(k);
  if (m < 1 || m > k - 2) throw Error("coupled_run needs 1 <= m <= k-2");
  const int letters = std::max(k, 2 * m + 1);
  std::vector<Symbol> symbols(k);
  for (int i = 0; i < k; ++i) symbols[i] = static_cast<Symbol>(i);
  const Word w(symbols, Alphabet(letters));
  FrogDynamics frogs(w, FrogArrangement::empty(k));

  // Start from a state compatible with the empty-word arrangement: frogs
  // 1..m on pads 0..m-1 and frog m+1 on pad m.
  const std::uint64_t minus = bit(m) - 1;
  SignedState s{k, 0, minus};
  for (std::uint64_t plus = 0; plus < bit(k); ++plus) {
    if (std::popcount(plus) != m + 1) continue;
    if (optimistic_frog({k, plus, minus}) == m) {
      s.plus = plus;
      break;
    }
  }

  SplitMix64 rng(stream_seed(seed, 0));
  CoupledRunResult res;
  res.k = k;
  res.m = m;
  const Rational lazy = lazy_probability(k, m);
  const std::uint64_t lazy_num = lazy.get_num().get_ui();
  const std::uint64_t lazy_den = lazy.get_den().get_ui();

  auto top_mask = [&]() {
    std::uint64_t mask = 0;
    auto pads = frogs.pad_of();
    for (int i = 0; i < m; ++i) mask |= bit(pads[i]);
    return mask;
  };
  auto poke_other = [&]() {
    // A uniform letter that labels none of the pads of frogs 1..m+1.
    std::uint64_t used = top_mask() | bit(frogs.pad_of()[m]);
    const int free = letters - (m + 1);
    int pick = static_cast<int>(rng.below(free));
    for (int a = 0; a < letters; ++a) {
      if (a < k && (used & bit(a))) continue;
      if (pick-- == 0) {
        frogs.poke(static_cast<Symbol>(a));
        return;
      }
    }
  };

  for (std::uint64_t t = 0; t < burn_in + steps; ++t) {
    const bool idle = lazy_num != 0 && rng.below(lazy_den) < lazy_num;
    if (idle) {
      poke_other();
      if (t >= burn_in) ++res.lazy_steps;
    } else {
      const int which = static_cast<int>(rng.below(2 * m + 1));
      const auto plus = pads_of(s.plus, k);
      const auto minus_pads = pads_of(s.minus, k);
      SignedPad frog = which < m + 1 ? SignedPad{Sign::Plus, plus[which]}
                                     : SignedPad{Sign::Minus, minus_pads[which - (m + 1)]};
      const bool direct = frog.sign == Sign::Minus || frog.pad == optimistic_frog(s);
      if (direct)
        frogs.poke(static_cast<Symbol>(frog.pad));
      else
        poke_other();
      s = poke_signed(s, frog);
    }
    if (t < burn_in) continue;
    std::pair<int, std::uint64_t> fkey{frogs.pad_of()[m], top_mask()};
    std::pair<int, std::uint64_t> skey{optimistic_frog(s), s.minus};
    ++res.frog_joint[fkey];
    ++res.signed_joint[skey];
    if (fkey != skey) ++res.incompatible_steps;
    ++res.steps;
  }
  return res;
}

}  // namespace lcsfrogs
