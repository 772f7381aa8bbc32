#include "lcsfrogs/chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "lcsfrogs/error.hpp"

namespace lcsfrogs {

namespace {

void require_irreducible(const Word& w, int alphabet_size) {
  if (w.empty()) throw Error("empty period");
  if (!is_irreducible(w)) throw Error("reducible word");
  if (alphabet_size < w.alphabet().size())
    throw Error("alphabet smaller than the word's alphabet");
}

bool use_exact(std::size_t states, int alphabet_size, const ChainOptions& opts) {
  return states * static_cast<std::size_t>(alphabet_size) <= opts.exact_cap;
}

}  // namespace

ChainSolution enumerate_recurrent(const Word& w, int alphabet_size, const ChainOptions& opts) {
  require_irreducible(w, alphabet_size);
  const int k = static_cast<int>(w.size());
  ChainSolution sol{w, alphabet_size, {}, {}, {}, {}, {}, {}};
  sol.kernel.degree = alphabet_size;

  std::unordered_map<FrogArrangement, std::uint32_t, FrogArrangementHash> index;
  const auto start = FrogArrangement::empty(k);
  index.emplace(start, 0);
  sol.states.push_back(start);
  FrogDynamics dyn(w, start);
  for (std::size_t s = 0; s < sol.states.size(); ++s) {
    for (int a = 0; a < alphabet_size; ++a) {
      dyn.reset(sol.states[s]);
      dyn.poke(static_cast<Symbol>(a));
      auto next = dyn.arrangement();
      auto [it, fresh] = index.emplace(next, static_cast<std::uint32_t>(sol.states.size()));
      if (fresh) {
        if (sol.states.size() >= opts.state_cap) throw Error("too large");
        sol.states.push_back(std::move(next));
      }
      sol.kernel.succ.push_back(it->second);
      for (auto d : dyn.displacement()) sol.displacement.push_back(static_cast<std::int32_t>(d));
    }
  }
  sol.kernel.states = sol.states.size();
  return sol;
}

Stationary stationary(const ChainSolution& sol, const ChainOptions& opts) {
  return solve_stationary(sol.kernel, use_exact(sol.states.size(), sol.alphabet_size, opts));
}

Speeds speeds_exact(const ChainSolution& sol) {
  const int k = sol.k();
  const int d = sol.alphabet_size;
  if (sol.stationary.values.size() != sol.states.size())
    throw Error("stationary distribution not solved");
  Speeds out;
  out.values.assign(k, 0.0);
  std::vector<std::int64_t> row(k);
  std::vector<Rational> exact;
  if (sol.exact()) exact.assign(k, 0);
  for (std::size_t s = 0; s < sol.states.size(); ++s) {
    std::fill(row.begin(), row.end(), 0);
    for (int a = 0; a < d; ++a) {
      auto disp = sol.disp(s, a);
      for (int m = 0; m < k; ++m) row[m] += disp[m];
    }
    for (int m = 0; m < k; ++m) {
      out.values[m] += sol.stationary.values[s] * static_cast<double>(row[m]) / d;
      if (sol.exact()) exact[m] += (*sol.stationary.exact)[s] * static_cast<long>(row[m]);
    }
  }
  if (sol.exact()) {
    for (auto& q : exact) q /= d;
    for (int m = 0; m < k; ++m) out.values[m] = exact[m].get_d();
    out.exact = std::move(exact);
  }
  return out;
}

namespace {

// Auxiliary chain on (state, symbol) pairs: (F, a) moves to (Fa, b) for each b.
struct Auxiliary {
  UniformChain chain;
  std::vector<double> pi;
};

Auxiliary auxiliary_chain(const ChainSolution& sol) {
  const std::size_t n = sol.states.size();
  const int d = sol.alphabet_size;
  Auxiliary aux;
  aux.chain.states = n * d;
  aux.chain.degree = d;
  aux.chain.succ.reserve(n * d * d);
  aux.pi.resize(n * d);
  for (std::size_t s = 0; s < n; ++s)
    for (int a = 0; a < d; ++a) {
      const std::uint32_t t = sol.kernel.next(s, a);
      for (int b = 0; b < d; ++b) aux.chain.succ.push_back(t * d + b);
      aux.pi[s * d + a] = sol.stationary.values[s] / d;
    }
  return aux;
}

std::vector<double> observable(const ChainSolution& sol, int m, double speed) {
  const int d = sol.alphabet_size;
  std::vector<double> g(sol.states.size() * d);
  for (std::size_t s = 0; s < sol.states.size(); ++s)
    for (int a = 0; a < d; ++a) g[s * d + a] = sol.disp(s, a)[m - 1] - speed;
  return g;
}

void require_speeds(const ChainSolution& sol) {
  if (sol.speeds.values.size() != static_cast<std::size_t>(sol.k()))
    throw Error("speeds not computed");
}

}  // namespace

double sigma_m(const ChainSolution& sol, int m) {
  require_speeds(sol);
  if (m < 1 || m > sol.k()) throw Error("frog index out of range");
  auto aux = auxiliary_chain(sol);
  FundamentalSolver z(aux.chain, aux.pi);
  return std::sqrt(z.variance(observable(sol, m, sol.speeds.values[m - 1])));
}

std::vector<double> all_sigmas(const ChainSolution& sol) {
  require_speeds(sol);
  auto aux = auxiliary_chain(sol);
  FundamentalSolver z(aux.chain, aux.pi);
  std::vector<double> out;
  for (int m = 1; m <= sol.k(); ++m)
    out.push_back(std::sqrt(z.variance(observable(sol, m, sol.speeds.values[m - 1]))));
  return out;
}

ChainSolution analyze(const Word& w, int alphabet_size, const ChainOptions& opts,
                      bool with_sigmas) {
  auto sol = enumerate_recurrent(w, alphabet_size, opts);
  sol.stationary = stationary(sol, opts);
  sol.speeds = speeds_exact(sol);
  if (with_sigmas) sol.sigmas = all_sigmas(sol);
  return sol;
}

Rational gamma(std::span<const Rational> speeds, int k, const Rational& rho) {
  if (rho < 0) throw Error("rho must be non-negative");
  Rational excess = 0;
  for (const auto& s : speeds)
    if (s <= rho) excess += rho - s;
  Rational out = rho - excess / k;
  out.canonicalize();
  return out;
}

double gamma(std::span<const double> speeds, int k, double rho) {
  if (rho < 0) throw Error("rho must be non-negative");
  double excess = 0;
  for (double s : speeds)
    if (s <= rho) excess += rho - s;
  return rho - excess / k;
}

namespace {

// Index of the frog whose speed equals rho, or -1.
int matching_frog(const ChainSolution& sol, const Rational& rho, const ChainOptions& opts) {
  require_speeds(sol);
  for (int m = 0; m < sol.k(); ++m) {
    if (sol.speeds.exact) {
      if ((*sol.speeds.exact)[m] == rho) return m;
    } else if (std::abs(sol.speeds.values[m] - rho.get_d()) <= opts.speed_tolerance) {
      return m;
    }
  }
  return -1;
}

double tau_from_sigma(double sigma, int k) {
  return sigma / (k * std::sqrt(2 * std::numbers::pi));
}

}  // namespace

double tau(const ChainSolution& sol, const Rational& rho, const ChainOptions& opts) {
  const int m = matching_frog(sol, rho, opts);
  if (m < 0) return 0.0;
  const double sigma =
      sol.sigmas.size() == static_cast<std::size_t>(sol.k()) ? sol.sigmas[m] : sigma_m(sol, m + 1);
  return tau_from_sigma(sigma, sol.k());
}

GammaCurve gamma_curve(int k, const Speeds& speeds, std::span<const double> sigmas) {
  if (static_cast<int>(speeds.values.size()) != k) throw Error("need one speed per frog");
  const bool with_tau = static_cast<int>(sigmas.size()) == k;
  GammaCurve curve;
  curve.k = k;

  std::vector<int> order(k);
  for (int m = 0; m < k; ++m) order[m] = m;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return speeds.values[a] < speeds.values[b];
  });

  double prev = 0.0;
  std::optional<Rational> prev_exact;
  if (speeds.exact) prev_exact = Rational(0);
  int below = 0;
  for (int idx = 0; idx < k; ++idx) {
    const int m = order[idx];
    const double s = speeds.values[m];
    GammaBreakpoint bp{s, gamma(std::span<const double>(speeds.values), k, s), std::nullopt,
                       std::nullopt, std::nullopt};
    if (with_tau) bp.tau = tau_from_sigma(sigmas[m], k);
    GammaSegment seg{prev, s, Rational(k - below, k), prev_exact, std::nullopt};
    seg.slope.canonicalize();
    if (speeds.exact) {
      const Rational& q = (*speeds.exact)[m];
      bp.rho_exact = q;
      bp.gamma_exact = gamma(std::span<const Rational>(*speeds.exact), k, q);
      bp.gamma = bp.gamma_exact->get_d();
      seg.to_exact = q;
      prev_exact = q;
    }
    curve.segments.push_back(seg);
    curve.breakpoints.push_back(bp);
    prev = s;
    ++below;
  }
  GammaSegment last{prev, std::numeric_limits<double>::infinity(), Rational(k - below, k),
                    prev_exact, std::nullopt};
  last.slope.canonicalize();
  curve.segments.push_back(last);
  return curve;
}

GammaCurve gamma_curve(const ChainSolution& sol) {
  require_speeds(sol);
  const int k = sol.k();
  const auto sig = sol.sigmas.size() == static_cast<std::size_t>(k) ? sol.sigmas : all_sigmas(sol);
  return gamma_curve(k, sol.speeds, sig);
}

std::vector<Rational> speeds_closed_form(int k, int alphabet_size) {
  if (k < 1) throw Error("k must be positive");
  if (alphabet_size < k) throw Error("a word of k distinct symbols needs |alphabet| >= k");
  std::vector<Rational> out;
  for (int i = 1; i <= k; ++i) {
    Rational s(static_cast<long>(k) * (k + 1),
               static_cast<long>(alphabet_size) * (k + 2 - i) * (k + 1 - i));
    s.canonicalize();
    out.push_back(s);
  }
  return out;
}

MinForm gamma_min_form(int k) {
  if (k < 1) throw Error("k must be positive");
  std::optional<Rational> best;
  for (long t = 1; t * t <= 4L * k + 4; ++t) {
    Rational v(k + t * t, static_cast<long>(k) * (t + 1));
    v.canonicalize();
    if (!best || v < *best) best = v;
  }
  bool special = false;
  for (long r = 1; r * r + r - 1 <= k; ++r) special |= (r * r + r - 1 == k);
  return {*best, special};
}

int MArrangement::size() const { return std::popcount(occupied); }

MArrangement first_pads(int k, int m) {
  if (k < 1 || k > 64) throw Error("m-arrangements need 1 <= k <= 64");
  if (m < 0 || m > k) throw Error("m out of range");
  std::uint64_t mask = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  return {k, mask};
}

std::pair<MArrangement, int> marrangement_step(const MArrangement& s, Symbol a, const Word& w) {
  const int k = s.k;
  if (static_cast<int>(w.size()) != k) throw Error("arrangement size differs from |W|");
  int cnt[64] = {};
  int pend[64] = {};
  std::vector<int> stack;
  for (int p = 0; p < k; ++p) {
    cnt[p] = s.contains(p) ? 1 : 0;
    if (cnt[p] && w[p] == a) {
      pend[p] = 1;
      stack.push_back(p);
    }
  }
  int hops = 0;
  // Process pads in stack order; the end state does not depend on the order
  // (checked against the full dynamics in the tests).
  while (!stack.empty()) {
    const int p = stack.back();
    if (pend[p] == 0) {
      stack.pop_back();
      continue;
    }
    --pend[p];
    --cnt[p];
    const int q = p + 1 == k ? 0 : p + 1;
    ++cnt[q];
    ++hops;
    if (cnt[q] - pend[q] > 1) {
      if (pend[q]++ == 0) stack.push_back(q);
    }
  }
  std::uint64_t mask = 0;
  for (int p = 0; p < k; ++p)
    if (cnt[p]) mask |= std::uint64_t{1} << p;
  return {{k, mask}, hops};
}

MArrangementChain enumerate_marrangements(const Word& w, int alphabet_size, int m,
                                          const ChainOptions& opts) {
  require_irreducible(w, alphabet_size);
  const int k = static_cast<int>(w.size());
  MArrangementChain out;
  out.m = m;
  out.kernel.degree = alphabet_size;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  auto start = first_pads(k, m);
  index.emplace(start.occupied, 0);
  out.states.push_back(start);
  for (std::size_t s = 0; s < out.states.size(); ++s) {
    for (int a = 0; a < alphabet_size; ++a) {
      auto [next, h] = marrangement_step(out.states[s], static_cast<Symbol>(a), w);
      auto [it, fresh] = index.emplace(next.occupied, static_cast<std::uint32_t>(out.states.size()));
      if (fresh) {
        if (out.states.size() >= opts.state_cap) throw Error("too large");
        out.states.push_back(next);
      }
      out.kernel.succ.push_back(it->second);
      out.hops.push_back(h);
    }
  }
  out.kernel.states = out.states.size();
  return out;
}

PartialSums speeds_reduced(const Word& w, int alphabet_size, int upto_m,
                           const ChainOptions& opts) {
  require_irreducible(w, alphabet_size);
  const int k = static_cast<int>(w.size());
  if (upto_m < 1 || upto_m > k) throw Error("upto_m out of range");
  PartialSums out;
  std::vector<Rational> exact;
  bool all_exact = true;
  for (int m = 1; m <= upto_m; ++m) {
    auto ch = enumerate_marrangements(w, alphabet_size, m, opts);
    const bool ex = use_exact(ch.states.size(), alphabet_size, opts);
    auto pi = solve_stationary(ch.kernel, ex);
    double mean = 0;
    Rational mean_q = 0;
    for (std::size_t s = 0; s < ch.states.size(); ++s) {
      long h = 0;
      for (int a = 0; a < alphabet_size; ++a) h += ch.hops[s * alphabet_size + a];
      mean += pi.values[s] * h / alphabet_size;
      if (pi.exact) mean_q += (*pi.exact)[s] * h;
    }
    if (pi.exact) {
      mean_q /= alphabet_size;
      mean = mean_q.get_d();
      exact.push_back(mean_q);
    } else {
      all_exact = false;
    }
    out.values.push_back(mean);
  }
  if (all_exact) out.exact = std::move(exact);
  return out;
}

Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!digits(num) || !digits(den) || den[0] == '-')
    throw UsageError("expected a rational p/q, got '" + std::string(text) + "'");
  const mpz_class p{std::string(num)}, q{std::string(den)};
  if (q == 0) throw UsageError("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_str();
}

}  // namespace lcsfrogs
