#include "lcsfrogs/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "lcsfrogs/error.hpp"
#include "lcsfrogs/frogs.hpp"
#include "lcsfrogs/lcs.hpp"

namespace lcsfrogs {

SummaryStats summarize(std::span<const double> xs) {
  SummaryStats s;
  s.count = static_cast<std::int64_t>(xs.size());
  if (xs.empty()) return s;
  double sum = 0;
  for (double x : xs) sum += x;
  s.mean = sum / xs.size();
  double ss = 0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.stddev = xs.size() > 1 ? std::sqrt(ss / (xs.size() - 1)) : 0.0;
  auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

void fill_random(std::span<Symbol> out, int alphabet_size, SplitMix64& rng) {
  if (alphabet_size < 1 || alphabet_size > Alphabet::kMaxSize)
    throw Error("alphabet size out of range");
  if (alphabet_size == 1) {
    std::fill(out.begin(), out.end(), 0);
    return;
  }
  const auto size = static_cast<unsigned>(alphabet_size);
  if (std::has_single_bit(size)) {
    // Power-of-two alphabets: slice each 64-bit draw into fields.
    const int bits = std::countr_zero(size);
    const int per_draw = 64 / bits;
    const std::uint64_t mask = size - 1;
    std::size_t i = 0;
    while (i < out.size()) {
      std::uint64_t x = rng();
      for (int j = 0; j < per_draw && i < out.size(); ++j, ++i) {
        out[i] = static_cast<Symbol>(x & mask);
        x >>= bits;
      }
    }
    return;
  }
  for (auto& s : out) s = static_cast<Symbol>(rng.below(size));
}

Word sample_word(std::int64_t n, int alphabet_size, SplitMix64& rng) {
  if (n < 0) throw Error("n must be non-negative");
  std::vector<Symbol> v(n);
  fill_random(v, alphabet_size, rng);
  return Word(std::move(v), Alphabet(alphabet_size));
}

void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::int64_t>(count, 1024))));
  if (threads == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {

void require_word(const Word& w, int alphabet_size) {
  if (w.empty()) throw Error("empty period");
  if (!is_irreducible(w)) throw Error("reducible word");
  if (alphabet_size < w.alphabet().size()) throw Error("alphabet smaller than the word's");
}

// Final displacements of all frogs after a random word of length n.
template <class Body>
void frog_trials(const Word& w, int alphabet_size, std::int64_t n, std::int64_t trials,
                 std::uint64_t seed, int threads, Body&& body) {
  require_word(w, alphabet_size);
  if (n < 0 || trials < 1) throw Error("need n >= 0 and trials >= 1");
  const Word wide = w.with_alphabet(Alphabet(alphabet_size));
  parallel_for(trials, threads, [&](std::int64_t t) {
    SplitMix64 rng(stream_seed(seed, static_cast<std::uint64_t>(t)));
    FrogDynamics dyn(wide, FrogArrangement::empty(static_cast<int>(w.size())));
    std::vector<Symbol> chunk(4096);
    for (std::int64_t done = 0; done < n;) {
      const auto len = static_cast<std::size_t>(std::min<std::int64_t>(chunk.size(), n - done));
      fill_random(std::span(chunk).first(len), alphabet_size, rng);
      dyn.apply(std::span<const Symbol>(chunk).first(len));
      done += static_cast<std::int64_t>(len);
    }
    body(t, dyn.displacement());
  });
}

std::int64_t lcs_by(SymbolSpan a, SymbolSpan b, LcsMethod method, bool auto_heuristic) {
  switch (method.kind) {
    case LcsMethod::Kind::Exact:
      return lcs_dp(a, b);
    case LcsMethod::Kind::Heuristic:
      return lcs_heuristic(a, b).length;
    case LcsMethod::Kind::Band:
      return lcs_banded(a, b, method.band);
    case LcsMethod::Kind::Auto:
      break;
  }
  return auto_heuristic ? lcs_heuristic(a, b).length : lcs_dp(a, b);
}

void check_config(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw Error("trials must be at least 1");
  if (cfg.n < 0) throw Error("n must be non-negative");
}

}  // namespace

std::vector<SummaryStats> estimate_speeds(const Word& w, int alphabet_size, std::int64_t n,
                                          std::int64_t trials, std::uint64_t seed, int threads) {
  const int k = static_cast<int>(w.size());
  std::vector<std::vector<double>> per(k, std::vector<double>(trials));
  frog_trials(w, alphabet_size, n, trials, seed, threads,
              [&](std::int64_t t, std::span<const std::int64_t> d) {
                for (int m = 0; m < k; ++m)
                  per[m][t] = n == 0 ? 0.0 : static_cast<double>(d[m]) / static_cast<double>(n);
              });
  std::vector<SummaryStats> out;
  for (const auto& v : per) out.push_back(summarize(v));
  return out;
}

SampleSet delta_experiment(const ExperimentConfig& cfg, LcsMethod method) {
  check_config(cfg);
  if (cfg.n % 2 != 0) throw Error("delta needs even n");
  const bool heuristic = cfg.n > LcsMethod::kHeuristicAbove;
  SampleSet out;
  out.samples.resize(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
    SplitMix64 rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    std::vector<Symbol> v(cfg.n), w(cfg.n);
    fill_random(v, cfg.alphabet_size, rng);
    fill_random(w, cfg.alphabet_size, rng);
    const SymbolSpan a(v), b(w);
    const std::size_t h = v.size() / 2;
    const std::int64_t d = lcs_by(a, b, method, heuristic) -
                           lcs_by(a.first(h), b.first(h), method, heuristic) -
                           lcs_by(a.subspan(h), b.subspan(h), method, heuristic);
    out.samples[t] = static_cast<double>(d);
  });
  out.stats = summarize(out.samples);
  return out;
}

std::vector<double> lambda_samples(const Word& w, int alphabet_size, double rho, std::int64_t n,
                                   std::int64_t trials, std::uint64_t seed, int threads) {
  if (rho < 0) throw Error("rho must be non-negative");
  if (n < 1) throw Error("n must be positive");
  std::vector<double> out(trials);
  frog_trials(w, alphabet_size, n, trials, seed, threads,
              [&](std::int64_t t, std::span<const std::int64_t> d) {
                double lam = 0;
                for (auto dm : d)
                  lam += std::max(0.0, rho - static_cast<double>(dm) / static_cast<double>(n));
                out[t] = lam;
              });
  return out;
}

SampleSet estimate_gamma_cs(const ExperimentConfig& cfg, LcsMethod method) {
  check_config(cfg);
  if (cfg.n < 1) throw Error("n must be positive");
  SampleSet out;
  out.samples.resize(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
    SplitMix64 rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    std::vector<Symbol> v(cfg.n), w(cfg.n);
    fill_random(v, cfg.alphabet_size, rng);
    fill_random(w, cfg.alphabet_size, rng);
    out.samples[t] = static_cast<double>(lcs_by(v, w, method, true)) / static_cast<double>(cfg.n);
  });
  out.stats = summarize(out.samples);
  return out;
}

}  // namespace lcsfrogs
