#include "lcsfrogs/heights.hpp"

#include <algorithm>

#include "lcsfrogs/error.hpp"

namespace lcsfrogs {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

std::int64_t floor_mod(std::int64_t a, std::int64_t k) {
  std::int64_t r = a % k;
  return r < 0 ? r + k : r;
}

}  // namespace

KHeight::KHeight(int k, std::vector<std::int64_t> ledges)
    : k_(k), ledges_(std::move(ledges)) {
  if (k < 1) throw Error("k must be positive");
  if (static_cast<int>(ledges_.size()) != k)
    throw Error("a k-height has exactly k ledges");
  std::vector<bool> residue(k, false);
  for (std::size_t i = 0; i < ledges_.size(); ++i) {
    if (ledges_[i] < 0) throw Error("ledges must be non-negative");
    if (i > 0 && ledges_[i] <= ledges_[i - 1])
      throw Error("ledges must be strictly increasing");
    auto r = floor_mod(ledges_[i], k);
    if (residue[r]) throw Error("ledges must be distinct modulo k");
    residue[r] = true;
  }
}

KHeight KHeight::empty(int k) {
  std::vector<std::int64_t> l(k);
  for (int i = 0; i < k; ++i) l[i] = i;
  return KHeight(k, std::move(l));
}

std::int64_t KHeight::eval(std::int64_t x) const {
  std::int64_t h = x;
  for (auto xi : ledges_) {
    if (xi > x) break;
    h -= ceil_div(x - xi, k_);
  }
  return h;
}

std::vector<std::int64_t> KHeight::sample(std::int64_t upto) const {
  std::vector<std::int64_t> out(upto + 1);
  for (std::int64_t x = 0; x <= upto; ++x) out[x] = eval(x);
  return out;
}

KHeight ledges_of(std::span<const std::int64_t> h, int k) {
  if (k < 1) throw Error("k must be positive");
  const auto not_height = [] { return Error("not a k-height"); };
  if (h.empty() || h[0] != 0) throw not_height();
  const auto L = static_cast<std::int64_t>(h.size()) - 1;
  for (std::int64_t x = 1; x <= L; ++x) {
    auto inc = h[x] - h[x - 1];
    if (inc != 0 && inc != 1) throw not_height();
  }
  auto at = [&](std::int64_t x) { return x <= 0 ? x : h[x]; };
  // delta(x) = h(x) - h(x-k), which is k for x <= 0.
  std::int64_t prev = k;
  std::vector<std::int64_t> ledges(k, -1);
  for (std::int64_t x = 1; x <= L; ++x) {
    std::int64_t d = at(x) - at(x - k);
    if (d > prev || d < 0) throw not_height();
    // delta drops from k-m+1 to k-m right after ledge x_m.
    for (std::int64_t v = prev; v > d; --v) {
      if (v != prev) throw not_height();  // drops are by at most one
      ledges[k - v] = x - 1;
    }
    prev = d;
  }
  if (prev != 0) throw Error("not a k-height (window too short)");
  try {
    KHeight out(k, std::move(ledges));
    for (std::int64_t x = 0; x <= L; ++x)
      if (out.eval(x) != h[x]) throw not_height();
    return out;
  } catch (const Error&) {
    throw not_height();
  }
}

std::vector<std::int64_t> evolve(std::span<const std::int64_t> h, Symbol a,
                                 const Word& w) {
  if (w.empty()) throw Error("empty period");
  const std::size_t k = w.size();
  std::vector<std::int64_t> out(h.size());
  if (out.empty()) return out;
  out[0] = 0;
  for (std::size_t x = 1; x < h.size(); ++x) {
    if (w[(x - 1) % k] == a)
      out[x] = h[x - 1] + 1;
    else
      out[x] = std::max(h[x], out[x - 1]);
  }
  return out;
}

std::vector<std::int64_t> height_by_evolution(const Word& r, const Word& w,
                                              std::int64_t upto) {
  std::vector<std::int64_t> h(upto + 1, 0);
  for (Symbol a : r.symbols()) h = evolve(h, a, w);
  return h;
}

}  // namespace lcsfrogs
