#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcsfrogs/frogs.hpp"
#include "lcsfrogs/markov.hpp"
#include "lcsfrogs/words.hpp"

namespace lcsfrogs {

struct ChainOptions {
  std::size_t state_cap = 1'000'000;
  // Exact rationals when states * |alphabet| stays at or below this.
  std::size_t exact_cap = 5000;
  // Tolerance for rho == s_m when speeds are only known as doubles.
  double speed_tolerance = 1e-9;
};

struct Speeds {
  std::vector<double> values;
  std::optional<std::vector<Rational>> exact;
};

struct ChainSolution {
  Word word;
  int alphabet_size = 0;
  std::vector<FrogArrangement> states;  // states[0] is the empty-word arrangement
  UniformChain kernel;                  // one edge per symbol
  std::vector<std::int32_t> displacement;
  Stationary stationary;  // filled by analyze / stationary()
  Speeds speeds;
  std::vector<double> sigmas;

  int k() const { return static_cast<int>(word.size()); }
  std::span<const std::int32_t> disp(std::size_t state, int symbol) const {
    return {displacement.data() + (state * alphabet_size + symbol) * k(),
            static_cast<std::size_t>(k())};
  }
  bool exact() const { return stationary.exact.has_value(); }
};

// Closure of the empty-word arrangement under all symbols. Throws for
// reducible words and when the closure exceeds opts.state_cap.
ChainSolution enumerate_recurrent(const Word& w, int alphabet_size,
                                  const ChainOptions& opts = {});

Stationary stationary(const ChainSolution& sol, const ChainOptions& opts = {});
Speeds speeds_exact(const ChainSolution& sol);

// Per-step variance rate of D_m (m is 1-based) via the auxiliary chain on
// (arrangement, symbol) pairs.
double sigma_m(const ChainSolution& sol, int m);
std::vector<double> all_sigmas(const ChainSolution& sol);

// enumerate + stationary + speeds (+ sigmas).
ChainSolution analyze(const Word& w, int alphabet_size, const ChainOptions& opts = {},
                      bool with_sigmas = false);

Rational gamma(std::span<const Rational> speeds, int k, const Rational& rho);
double gamma(std::span<const double> speeds, int k, double rho);

// sigma_m / (k sqrt(2 pi)) when rho equals some speed s_m, else 0.
double tau(const ChainSolution& sol, const Rational& rho,
           const ChainOptions& opts = {});

struct GammaBreakpoint {
  double rho;
  double gamma;
  std::optional<double> tau;  // absent when no variance is available
  std::optional<Rational> rho_exact;
  std::optional<Rational> gamma_exact;
};

struct GammaSegment {
  double from;
  double to;  // +inf for the last segment
  Rational slope;
  std::optional<Rational> from_exact;
  std::optional<Rational> to_exact;
};

struct GammaCurve {
  int k = 0;
  std::vector<GammaBreakpoint> breakpoints;
  std::vector<GammaSegment> segments;
};

// Needs speeds; sigmas are used for tau when present (computed otherwise).
GammaCurve gamma_curve(const ChainSolution& sol);
// From speeds alone. tau is filled only when sigmas has one entry per frog.
GammaCurve gamma_curve(int k, const Speeds& speeds, std::span<const double> sigmas = {});

// s_i = k(k+1) / (|alphabet| (k+2-i)(k+1-i)) for words of k distinct symbols.
std::vector<Rational> speeds_closed_form(int k, int alphabet_size);

struct MinForm {
  Rational value;
  bool tau_nonzero;
};
// min over t >= 1 of (k + t^2) / (k (t + 1)), and whether k = r^2 + r - 1.
MinForm gamma_min_form(int k);

// Occupied pad set of the m nastiest frogs.
struct MArrangement {
  int k = 0;
  std::uint64_t occupied = 0;

  int size() const;
  bool contains(int pad) const { return (occupied >> pad) & 1u; }
  friend bool operator==(MArrangement, MArrangement) = default;
};

MArrangement first_pads(int k, int m);

// Poke every occupied pad labelled a; tokens cascade one pad at a time.
// Returns the new set and the total number of single-pad hops.
std::pair<MArrangement, int> marrangement_step(const MArrangement& s, Symbol a,
                                               const Word& w);

struct MArrangementChain {
  int m = 0;
  std::vector<MArrangement> states;  // states[0] = first m pads
  UniformChain kernel;
  std::vector<int> hops;  // state * |alphabet| + symbol
};

MArrangementChain enumerate_marrangements(const Word& w, int alphabet_size, int m,
                                          const ChainOptions& opts = {});

struct PartialSums {
  std::vector<double> values;  // entry m-1 is s_1 + ... + s_m
  std::optional<std::vector<Rational>> exact;
};

PartialSums speeds_reduced(const Word& w, int alphabet_size, int upto_m,
                           const ChainOptions& opts = {});

// "p/q" or "p"; throws UsageError otherwise.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

}  // namespace lcsfrogs
